#include "oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace oracle {

using kbound::AtomHash;
using kbound::BoundedVariant;
using kbound::Quantifier;
using kbound::RuleSet;

namespace {

std::vector<Term> terms_of(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const Atom& a : atoms) {
    for (Term t : a.args) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
  }
  return out;
}

std::vector<Atom> atoms_of(const FactBase& f) { return {f.begin(), f.end()}; }

Atom image(const Atom& a, const std::map<Term, Term>& m) {
  Atom out = a;
  for (Term& t : out.args) {
    auto it = m.find(t);
    if (it != m.end()) t = it->second;
  }
  return out;
}

// Every assignment of the free terms to the target terms under which all
// source atoms land in the target. An atom is tested as soon as its last free
// term is assigned.
class MapSearch {
 public:
  MapSearch(const std::vector<Atom>& source, const FactBase& target, const std::map<Term, Term>& base,
            const std::set<Term>& frozen)
      : target_(target), values_(target.terms()) {
    for (Term t : terms_of(source)) {
      if (!t.is_constant() && !frozen.count(t) && !base.count(t)) free_.push_back(t);
    }
    ready_.resize(free_.size() + 1);
    for (const Atom& a : source) {
      Pattern p{a, {}};
      std::size_t last = 0;
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        auto it = std::find(free_.begin(), free_.end(), a.args[i]);
        if (it != free_.end()) {
          std::size_t slot = it - free_.begin();
          p.slots.emplace_back(i, slot);
          last = std::max(last, slot + 1);
        } else if (auto b = base.find(a.args[i]); b != base.end()) {
          p.atom.args[i] = b->second;
        }
      }
      ready_[last].push_back(std::move(p));
    }
    assignment_.resize(free_.size());
  }

  const std::vector<Term>& free() const { return free_; }

  // Calls visit with the values of free() for each match until it returns false.
  template <class Visit>
  void run(Visit visit) {
    stop_ = false;
    step(0, visit);
  }

 private:
  struct Pattern {
    Atom atom;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
  };

  template <class Visit>
  void step(std::size_t i, Visit& visit) {
    for (Pattern& p : ready_[i]) {
      for (const auto& [arg, slot] : p.slots) p.atom.args[arg] = assignment_[slot];
      if (!target_.contains(p.atom)) return;
    }
    if (i == free_.size()) {
      stop_ = !visit(assignment_);
      return;
    }
    for (Term v : values_) {
      assignment_[i] = v;
      step(i + 1, visit);
      if (stop_) return;
    }
  }

  const FactBase& target_;
  std::vector<Term> values_;
  std::vector<Term> free_;
  std::vector<std::vector<Pattern>> ready_;
  std::vector<Term> assignment_;
  bool stop_ = false;
};

std::vector<std::map<Term, Term>> all_maps(const std::vector<Atom>& source, const FactBase& target,
                                           const std::map<Term, Term>& base, const std::set<Term>& frozen) {
  MapSearch search(source, target, base, frozen);
  std::vector<std::map<Term, Term>> out;
  search.run([&](const std::vector<Term>& values) {
    std::map<Term, Term> m = base;
    for (std::size_t i = 0; i < values.size(); ++i) m[search.free()[i]] = values[i];
    out.push_back(std::move(m));
    return true;
  });
  return out;
}

bool some_map(const std::vector<Atom>& source, const FactBase& target, const std::set<Term>& frozen) {
  bool found = false;
  MapSearch(source, target, {}, frozen).run([&](const std::vector<Term>&) {
    found = true;
    return false;
  });
  return found;
}

std::vector<std::map<Term, Term>> endomorphisms(const FactBase& f) {
  return all_maps(atoms_of(f), f, {}, {});
}

std::size_t image_size(const FactBase& f, const std::map<Term, Term>& m) {
  std::set<Atom> img;
  for (const Atom& a : f) img.insert(image(a, m));
  return img.size();
}

}  // namespace

std::vector<Substitution> homomorphisms(const std::vector<Atom>& source, const FactBase& target,
                                        const Substitution& fixed, const std::vector<Term>& frozen) {
  std::map<Term, Term> base(fixed.bindings().begin(), fixed.bindings().end());
  std::set<Term> frozen_set(frozen.begin(), frozen.end());
  std::vector<Substitution> out;
  for (const auto& m : all_maps(source, target, base, frozen_set)) {
    Substitution s;
    for (const auto& [from, to] : m) s.bind(from, to);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), kbound::substitution_less);
  return out;
}

bool homomorphism_exists(const FactBase& from, const FactBase& to) {
  return some_map(atoms_of(from), to, {});
}

bool retraction_exists(const FactBase& big, const FactBase& sub) {
  std::vector<Term> kept = sub.terms();
  std::set<Term> frozen(kept.begin(), kept.end());
  return some_map(atoms_of(big), sub, frozen);
}

bool is_core(const FactBase& f) {
  for (const auto& m : endomorphisms(f)) {
    if (image_size(f, m) < f.size()) return false;
  }
  return true;
}

std::size_t core_size(const FactBase& f) {
  std::size_t best = f.size();
  for (const auto& m : endomorphisms(f)) best = std::min(best, image_size(f, m));
  return best;
}

bool quasi_isomorphic(const FactBase& a, const FactBase& b) {
  if (a.size() != b.size()) return false;
  std::vector<Term> ta = a.terms();
  std::vector<Term> tb = b.terms();
  if (ta.size() != tb.size()) return false;
  std::vector<Term> perm = tb;
  std::sort(perm.begin(), perm.end());
  do {
    std::map<Term, Term> m;
    bool kinds = true;
    for (std::size_t i = 0; i < ta.size() && kinds; ++i) {
      kinds = ta[i].is_constant() == perm[i].is_constant();
      m[ta[i]] = perm[i];
    }
    if (!kinds) continue;
    bool all = true;
    for (const Atom& x : a) {
      if (!b.contains(image(x, m))) {
        all = false;
        break;
      }
    }
    if (all) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<std::pair<std::size_t, std::vector<Term>>> triggers(const FactBase& f, const RuleSet& rules) {
  std::vector<std::pair<std::size_t, std::vector<Term>>> out;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const kbound::Rule& rule = *rules[r];
    MapSearch search(rule.body(), f, {}, {});
    std::vector<std::size_t> slot;
    for (Term v : rule.body_variables()) {
      slot.push_back(std::find(search.free().begin(), search.free().end(), v) - search.free().begin());
    }
    search.run([&](const std::vector<Term>& values) {
      std::vector<Term> img;
      for (std::size_t i : slot) img.push_back(values[i]);
      out.emplace_back(r, std::move(img));
      return true;
    });
  }
  return out;
}

namespace {

struct NaiveTrigger {
  std::size_t rule;
  std::vector<Term> image;
  std::vector<Term> frontier;
  std::vector<Atom> output;
  unsigned rank = 0;
};

class NaiveSearch {
 public:
  NaiveSearch(const RuleSet& rules, BoundedVariant variant, unsigned k, const NaiveLimits& limits)
      : rules_(rules), k_(k), limits_(limits) {
    bf_ = variant == BoundedVariant::BfO || variant == BoundedVariant::BfSO ||
          variant == BoundedVariant::BfR;
    so_ = variant == BoundedVariant::SO || variant == BoundedVariant::BfSO;
    r_ = variant == BoundedVariant::R || variant == BoundedVariant::BfR;
    single_order_ = variant == BoundedVariant::BfO;
  }

  std::size_t nodes() const { return nodes_; }
  bool exceeded() {
    if (nodes_ > limits_.max_nodes) return true;
    if (limits_.deadline && (nodes_ & 63) == 0 && std::chrono::steady_clock::now() > *limits_.deadline) {
      late_ = true;
    }
    return late_;
  }

  void reset(const std::vector<Atom>& f) {
    rank_.clear();
    order_.clear();
    applied_.clear();
    classes_.clear();
    for (const Atom& a : f) add(a, 0);
  }

  // Some derivation produces an atom of rank k + 1.
  bool deep() {
    if (exceeded()) return false;
    std::vector<NaiveTrigger> cands = candidates();
    for (const NaiveTrigger& t : cands) {
      if (t.rank > k_) return true;
      std::size_t mark = order_.size();
      apply(t);
      bool found = deep();
      undo(t, mark);
      if (found || exceeded()) return found;
      if (single_order_) break;
    }
    return false;
  }

  // Some derivation terminates at depth k or less.
  bool shallow() {
    if (exceeded()) return false;
    std::vector<NaiveTrigger> cands = candidates();
    if (cands.empty()) return true;
    for (const NaiveTrigger& t : cands) {
      if (t.rank > k_) continue;
      std::size_t mark = order_.size();
      apply(t);
      bool found = shallow();
      undo(t, mark);
      if (found || exceeded()) return found;
      if (single_order_) break;
    }
    return false;
  }

 private:

  void add(const Atom& a, unsigned r) {
    if (rank_.emplace(a, r).second) order_.push_back(a);
  }

  void apply(const NaiveTrigger& t) {
    ++nodes_;
    applied_.insert({t.rule, t.image});
    classes_.insert({t.rule, t.frontier});
    for (const Atom& a : t.output) add(a, t.rank);
  }

  void undo(const NaiveTrigger& t, std::size_t mark) {
    applied_.erase({t.rule, t.image});
    classes_.erase({t.rule, t.frontier});
    while (order_.size() > mark) {
      rank_.erase(order_.back());
      order_.pop_back();
    }
  }

  FactBase current() const { return FactBase(std::span<const Atom>(order_)); }

  // Productive triggers that the variant allows, restricted to the lowest
  // rank for breadth-first derivations.
  std::vector<NaiveTrigger> candidates() {
    FactBase f = current();
    std::vector<NaiveTrigger> out;
    for (auto& [r, img] : triggers(f, rules_)) {
      if (applied_.count({r, img})) continue;
      const kbound::Rule& rule = *rules_[r];
      const std::vector<Term>& vars = rule.body_variables();
      auto value = [&](Term v) { return img[std::find(vars.begin(), vars.end(), v) - vars.begin()]; };
      NaiveTrigger t{r, img, {}, {}, 0};
      for (Term v : rule.frontier()) t.frontier.push_back(value(v));
      if (so_ && classes_.count({r, t.frontier})) continue;
      std::map<Term, Term> pi;
      for (std::size_t i = 0; i < img.size(); ++i) pi[vars[i]] = img[i];
      for (Term z : rule.existentials()) {
        kbound::NullOrigin origin{rule.id(), z.name(), {}};
        for (Term v : vars) origin.bindings.emplace_back(v.name(), value(v));
        std::sort(origin.bindings.begin(), origin.bindings.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        pi[z] = Term::null(origin);
      }
      std::vector<Atom> fresh;
      for (const Atom& h : rule.head()) {
        Atom a = image(h, pi);
        if (std::find(t.output.begin(), t.output.end(), a) == t.output.end()) t.output.push_back(a);
        if (!rank_.count(a) && std::find(fresh.begin(), fresh.end(), a) == fresh.end()) fresh.push_back(a);
      }
      if (fresh.empty()) continue;
      if (r_) {
        std::vector<Term> kept = f.terms();
        std::set<Term> frozen(kept.begin(), kept.end());
        if (some_map(fresh, f, frozen)) continue;
      }
      for (const Atom& b : rule.body()) t.rank = std::max(t.rank, rank_.at(image(b, pi)) + 1);
      out.push_back(std::move(t));
    }
    if (bf_ && !out.empty()) {
      unsigned low = out.front().rank;
      for (const NaiveTrigger& t : out) low = std::min(low, t.rank);
      std::erase_if(out, [&](const NaiveTrigger& t) { return t.rank != low; });
    }
    return out;
  }

  const RuleSet& rules_;
  unsigned k_;
  const NaiveLimits& limits_;
  bool late_ = false;
  bool bf_ = false;
  bool so_ = false;
  bool r_ = false;
  bool single_order_ = false;
  std::size_t nodes_ = 0;
  std::unordered_map<Atom, unsigned, AtomHash> rank_;
  std::vector<Atom> order_;
  std::set<std::pair<std::size_t, std::vector<Term>>> applied_;
  std::set<std::pair<std::size_t, std::vector<Term>>> classes_;
};

}  // namespace

NaiveResult naive_decide(const RuleSet& rules, BoundedVariant variant, Quantifier quantifier, unsigned k,
                         kbound::TermKinds kinds, const NaiveLimits& limits) {
  NaiveResult result;
  if (rules.empty()) return result;
  std::size_t b = rules.max_body_size();
  std::size_t bound = 1;
  for (unsigned i = 0; i <= k; ++i) bound *= b;
  kbound::Signature sig = limits.all_predicates ? rules.signature() : rules.body_signature();
  std::size_t pool_size = bound * sig.max_arity();
  std::vector<Term> pool;
  for (std::size_t i = 0; i < pool_size; ++i) {
    pool.push_back(Term::constant("k" + std::to_string(i)));
    if (kinds == kbound::TermKinds::Mixed) pool.push_back(Term::variable("Q" + std::to_string(i)));
  }
  // Atoms over the pool, grouped by the last pool term they use.
  std::vector<std::pair<std::size_t, Atom>> universe;
  for (const auto& [name, arity] : sig.predicates()) {
    std::vector<Term> args(arity);
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t last) {
      if (i == arity) {
        universe.emplace_back(last, Atom(kbound::Predicate(name), args));
        return;
      }
      for (std::size_t n = 0; n < pool.size(); ++n) {
        args[i] = pool[n];
        fill(i + 1, std::max(last, n));
      }
    };
    fill(0, 0);
  }
  std::stable_sort(universe.begin(), universe.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  NaiveSearch search(rules, variant, k, limits);
  std::vector<Atom> f;
  bool done = false;
  // Renaming pool terms of the same kind preserves every variant, so only
  // factbases whose constants and variables each form a prefix of the pool
  // are searched.
  std::map<Term, std::size_t> ordinal;
  for (std::size_t i = 0; i < pool.size(); ++i) ordinal[pool[i]] = i / (kinds == kbound::TermKinds::Mixed ? 2 : 1);
  auto dense = [&] {
    std::set<Term> used;
    for (const Atom& a : f) used.insert(a.args.begin(), a.args.end());
    std::size_t constants = 0, variables = 0, max_constant = 0, max_variable = 0;
    for (Term t : used) {
      std::size_t o = ordinal.at(t) + 1;
      if (t.is_constant()) {
        ++constants;
        max_constant = std::max(max_constant, o);
      } else {
        ++variables;
        max_variable = std::max(max_variable, o);
      }
    }
    return constants == max_constant && variables == max_variable;
  };
  auto check = [&] {
    if (!dense()) return;
    if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline) {
      result.budget_exceeded = true;
      done = true;
      return;
    }
    ++result.factbases;
    search.reset(f);
    bool bad = quantifier == Quantifier::ForAll ? search.deep() : !search.shallow();
    if (search.exceeded()) {
      result.budget_exceeded = true;
      done = true;
    } else if (bad) {
      result.bounded = false;
      result.witness = f;
      done = true;
    }
  };
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t end, std::size_t left) {
    if (done) return;
    if (left == 0) {
      check();
      return;
    }
    for (std::size_t i = left - 1; i < end && !done; ++i) {
      f.push_back(universe[i].second);
      choose(i, left - 1);
      f.pop_back();
    }
  };
  // Every subset of the universe with 1..bound atoms, ordered by the number
  // of pool terms it may use and then by size. A subset is visited once: its
  // largest atom fixes the pool prefix.
  std::size_t begin = 0;
  for (std::size_t n = 0; n < pool.size() && !done; ++n) {
    std::size_t end = begin;
    while (end < universe.size() && universe[end].first == n) ++end;
    for (std::size_t m = 1; m <= bound && !done; ++m) {
      for (std::size_t last = begin; last < end && !done; ++last) {
        f.push_back(universe[last].second);
        choose(last, m - 1);
        f.pop_back();
      }
    }
    begin = end;
  }
  result.nodes = search.nodes();
  return result;
}

}  // namespace oracle
