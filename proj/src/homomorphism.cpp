#include "kbound/homomorphism.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "kbound/error.hpp"

namespace kbound {

namespace {

class Matcher {
 public:
  Matcher(const HomSearchSpec& spec, const std::function<bool(const Substitution&)>& visit)
      : spec_(spec), target_(*spec.target), visit_(visit) {
    std::unordered_set<Term> frozen(spec.frozen.begin(), spec.frozen.end());
    for (const Atom& a : spec.source) {
      Pattern p;
      p.predicate = a.predicate;
      for (Term t : a.args) {
        if (t.is_constant() || frozen.count(t)) {
          p.args.push_back({-1, t});
        } else if (auto img = spec.fixed.lookup(t)) {
          p.args.push_back({-1, *img});
        } else {
          auto [it, inserted] = slot_of_.emplace(t, static_cast<int>(slot_terms_.size()));
          if (inserted) slot_terms_.push_back(t);
          p.args.push_back({it->second, Term()});
        }
      }
      patterns_.push_back(std::move(p));
    }
    assignment_.assign(slot_terms_.size(), Term());
    used_.assign(patterns_.size(), false);
  }

  void run() { search(patterns_.size()); }

 private:
  struct Arg {
    int slot;
    Term term;
  };
  struct Pattern {
    Predicate predicate;
    std::vector<Arg> args;
  };

  Term bound_term(const Arg& a) const { return a.slot < 0 ? a.term : assignment_[a.slot]; }

  std::size_t pick() const {
    std::size_t best = patterns_.size();
    int best_bound = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (used_[i]) continue;
      int bound = 0;
      for (const Arg& a : patterns_[i].args) bound += bound_term(a).valid() ? 1 : 0;
      if (bound > best_bound) {
        best_bound = bound;
        best = i;
      }
    }
    return best;
  }

  bool emit() {
    Substitution s = spec_.fixed;
    for (std::size_t i = 0; i < slot_terms_.size(); ++i) s.bind(slot_terms_[i], assignment_[i]);
    return visit_(s);
  }

  // Returns false when the visitor asked to stop.
  bool search(std::size_t remaining) {
    if (remaining == 0) return emit();
    std::size_t i = pick();
    const Pattern& p = patterns_[i];
    std::span<const std::uint32_t> candidates = target_.with_predicate(p.predicate);
    for (const Arg& a : p.args) {
      Term t = bound_term(a);
      if (!t.valid()) continue;
      auto c = target_.with_term(t);
      if (c.size() < candidates.size()) candidates = c;
    }
    used_[i] = true;
    std::vector<int> trail;
    for (std::uint32_t idx : candidates) {
      const Atom& b = target_[idx];
      if (b.predicate != p.predicate || b.args.size() != p.args.size()) continue;
      if (spec_.filter && !spec_.filter(i, b)) continue;
      trail.clear();
      bool ok = true;
      for (std::size_t k = 0; k < p.args.size() && ok; ++k) {
        const Arg& a = p.args[k];
        Term t = bound_term(a);
        if (t.valid()) {
          ok = t == b.args[k];
        } else {
          assignment_[a.slot] = b.args[k];
          trail.push_back(a.slot);
        }
      }
      bool keep_going = !ok || search(remaining - 1);
      for (int s : trail) assignment_[s] = Term();
      if (!keep_going) {
        used_[i] = false;
        return false;
      }
    }
    used_[i] = false;
    return true;
  }

  const HomSearchSpec& spec_;
  const FactBase& target_;
  const std::function<bool(const Substitution&)>& visit_;
  std::vector<Pattern> patterns_;
  std::unordered_map<Term, int> slot_of_;
  std::vector<Term> slot_terms_;
  std::vector<Term> assignment_;
  std::vector<bool> used_;
};

}  // namespace

void for_each_homomorphism(const HomSearchSpec& spec,
                           const std::function<bool(const Substitution&)>& visit) {
  static const FactBase kEmpty;
  HomSearchSpec local;
  const HomSearchSpec* s = &spec;
  if (spec.target == nullptr) {
    local = spec;
    local.target = &kEmpty;
    s = &local;
  }
  Matcher(*s, visit).run();
}

std::vector<Substitution> find_homomorphisms(const HomSearchSpec& spec,
                                             std::optional<std::size_t> limit) {
  std::vector<Substitution> out;
  if (limit && *limit == 0) return out;
  for_each_homomorphism(spec, [&](const Substitution& s) {
    out.push_back(s);
    return !limit || out.size() < *limit;
  });
  if (!limit) std::sort(out.begin(), out.end(), substitution_less);
  return out;
}

std::optional<Substitution> find_homomorphism(const HomSearchSpec& spec) {
  std::optional<Substitution> found;
  for_each_homomorphism(spec, [&](const Substitution& s) {
    found = s;
    return false;
  });
  return found;
}

std::optional<Substitution> find_homomorphism(const FactBase& from, const FactBase& to) {
  HomSearchSpec spec;
  spec.source.assign(from.begin(), from.end());
  spec.target = &to;
  return find_homomorphism(spec);
}

bool exists_homomorphism(const FactBase& from, const FactBase& to) {
  return find_homomorphism(from, to).has_value();
}

std::optional<Substitution> find_retraction(const FactBase& big, const FactBase& sub) {
  if (!sub.subset_of(big)) throw NotASubset("retraction target is not a subset of the source");
  HomSearchSpec spec;
  for (const Atom& a : big) {
    if (!sub.contains(a)) spec.source.push_back(a);
  }
  spec.target = &sub;
  spec.frozen = sub.terms();
  return find_homomorphism(spec);
}

bool exists_retraction(const FactBase& big, const FactBase& sub) {
  return find_retraction(big, sub).has_value();
}

FactBase core_of(const FactBase& f) {
  FactBase current = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Atom& a : current.sorted()) {
      FactBase smaller;
      for (const Atom& b : current) {
        if (b != a) smaller.insert(b);
      }
      if (auto h = find_homomorphism(current, smaller)) {
        current = apply_substitution(*h, current);
        changed = true;
        break;
      }
    }
  }
  return current;
}

}  // namespace kbound
