#include "kbound/enumerate.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace kbound {

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t x : k) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

class Enumerator {
 public:
  Enumerator(std::shared_ptr<const RuleSet> rules, const VariantPolicy& policy, unsigned max_depth,
             const DerivationVisitor& visit, const EnumerationLimits& limits)
      : rules_(std::move(rules)),
        policy_(policy),
        max_depth_(max_depth),
        visit_(visit),
        limits_(limits),
        order_(*rules_) {}

  EnumerationStats run(const FactBase& f) {
    Derivation d(f, rules_, policy_.naming);
    if (policy_.breadth_first) {
      std::vector<Trigger> candidates = applicable_triggers(d.atoms(), *rules_);
      breadth_first(std::move(d), 1, candidates);
    } else {
      free(std::move(d));
    }
    return stats_;
  }

 private:
  bool halted() const { return stats_.stopped || stats_.budget_exceeded; }

  // Returns false when this prefix must not be expanded.
  bool enter(const Derivation& d, unsigned rank) {
    ++stats_.nodes;
    if (stats_.nodes > limits_.max_nodes) {
      stats_.budget_exceeded = true;
      return false;
    }
    if (limits_.deadline && (stats_.nodes & 255) == 0 &&
        std::chrono::steady_clock::now() > *limits_.deadline) {
      stats_.budget_exceeded = true;
      return false;
    }
    if (!limits_.memoize) return true;
    return seen_.insert(key(d, rank)).second;
  }

  Key key(const Derivation& d, unsigned rank) const {
    std::vector<Key> atoms;
    atoms.reserve(d.atoms().size());
    for (std::size_t i = 0; i < d.atoms().size(); ++i) {
      const Atom& a = d.atoms()[i];
      Key row{a.predicate.id()};
      for (Term t : a.args) row.push_back(t.id());
      row.push_back(d.rank_at(i));
      atoms.push_back(std::move(row));
    }
    std::sort(atoms.begin(), atoms.end());
    Key k{rank};
    for (const Key& row : atoms) {
      k.push_back(static_cast<std::uint32_t>(row.size()));
      k.insert(k.end(), row.begin(), row.end());
    }
    if (policy_.variant == Variant::O || policy_.variant == Variant::SO) {
      std::vector<Key> residue;
      for (const Step& s : d.steps()) {
        Key row{static_cast<std::uint32_t>(order_.rule_index(s.trigger))};
        if (policy_.variant == Variant::O) {
          for (Term t : s.trigger.image()) row.push_back(t.id());
        } else {
          for (Term t : s.trigger.frontier_image()) row.push_back(t.id());
        }
        residue.push_back(std::move(row));
      }
      std::sort(residue.begin(), residue.end());
      residue.erase(std::unique(residue.begin(), residue.end()), residue.end());
      k.push_back(0xffffffffu);
      for (const Key& row : residue) {
        k.push_back(static_cast<std::uint32_t>(row.size()));
        k.insert(k.end(), row.begin(), row.end());
      }
    }
    return k;
  }

  void emit(const Derivation& d, bool terminated) {
    ++stats_.emitted;
    if (!visit_(d, terminated)) stats_.stopped = true;
  }

  // Applies the X-applicable triggers among candidates that produce nothing
  // and returns the productive ones.
  std::vector<Trigger> settle(Derivation& d, const std::vector<Trigger>& candidates) {
    std::vector<Trigger> productive;
    for (const Trigger& t : candidates) {
      if (!d.supports(t) || !is_applicable(policy_.variant, d, t)) continue;
      if (d.is_productive(t)) {
        productive.push_back(t);
      } else {
        d.extend(t);
      }
    }
    // An SO-applicable trigger may have been blocked by an unproductive one of
    // the same frontier class.
    std::erase_if(productive, [&](const Trigger& t) { return !is_applicable(policy_.variant, d, t); });
    return productive;
  }

  void free(Derivation d) {
    if (halted()) return;
    std::vector<Trigger> productive = settle(d, applicable_triggers(d.atoms(), *rules_));
    if (!enter(d, 0)) return;
    if (productive.empty()) {
      emit(d, true);
      return;
    }
    for (const Trigger& t : productive) {
      if (halted()) return;
      Derivation child = d;
      child.extend(t);
      if (child.steps().back().rank > max_depth_) {
        emit(child, false);
      } else {
        free(std::move(child));
      }
      if (limits_.single_path) return;
    }
  }

  void breadth_first(Derivation d, unsigned rank, const std::vector<Trigger>& candidates) {
    if (halted()) return;
    std::vector<Trigger> productive = settle(d, candidates);
    if (!enter(d, rank)) return;
    if (productive.empty()) {
      std::vector<Atom> delta;
      for (std::size_t i = 0; i < d.atoms().size(); ++i) {
        if (d.rank_at(i) == rank) delta.push_back(d.atoms()[i]);
      }
      if (delta.empty()) {
        emit(d, true);
        return;
      }
      std::vector<Trigger> next = triggers_touching(d.atoms(), *rules_, delta);
      std::stable_sort(next.begin(), next.end(), order_);
      breadth_first(std::move(d), rank + 1, next);
      return;
    }
    if (rank > max_depth_) {
      for (const Trigger& t : productive) {
        if (halted()) return;
        Derivation child = d;
        child.extend(t);
        emit(child, false);
        if (limits_.single_path) return;
      }
      return;
    }
    if (policy_.variant == Variant::O) {
      for (const Trigger& t : productive) d.extend(t);
      breadth_first(std::move(d), rank, candidates);
      return;
    }
    for (const Trigger& t : productive) {
      if (halted()) return;
      Derivation child = d;
      child.extend(t);
      breadth_first(std::move(child), rank, candidates);
      if (limits_.single_path) return;
    }
  }

  std::shared_ptr<const RuleSet> rules_;
  VariantPolicy policy_;
  unsigned max_depth_;
  const DerivationVisitor& visit_;
  EnumerationLimits limits_;
  TriggerOrder order_;
  EnumerationStats stats_;
  std::unordered_set<Key, KeyHash> seen_;
};

}  // namespace

EnumerationStats enumerate_derivations(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                                       const VariantPolicy& policy, unsigned max_depth,
                                       const DerivationVisitor& visit,
                                       const EnumerationLimits& limits) {
  return Enumerator(std::move(rules), policy, max_depth, visit, limits).run(f);
}

std::vector<Derivation> collect_derivations(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                                            const VariantPolicy& policy, unsigned max_depth,
                                            std::size_t limit) {
  std::vector<Derivation> out;
  if (limit == 0) return out;
  enumerate_derivations(f, std::move(rules), policy, max_depth, [&](const Derivation& d, bool) {
    out.push_back(d);
    return out.size() < limit;
  });
  return out;
}

AncestryCheck check_ancestry_preservation(const Derivation& d, const Atom& a,
                                          const VariantPolicy& policy,
                                          const EnumerationLimits& limits) {
  unsigned rank = d.rank_of(a);
  if (rank == 0) throw std::invalid_argument("atom belongs to the initial factbase");
  std::vector<Atom> primes = prime_ancestors(d, a);
  FactBase g{std::span<const Atom>(primes)};
  AncestryCheck result;
  enumerate_derivations(
      g, d.rules_ptr(), policy, rank,
      [&](const Derivation& candidate, bool) {
        if (candidate.rank(a) == rank) {
          result.preserved = true;
          result.witness = candidate;
          return false;
        }
        return true;
      },
      limits);
  return result;
}

}  // namespace kbound
