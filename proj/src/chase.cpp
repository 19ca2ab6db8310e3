#include "kbound/chase.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "kbound/error.hpp"
#include "kbound/homomorphism.hpp"

namespace kbound {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::O: return "O";
    case Variant::SO: return "SO";
    case Variant::R: return "R";
    case Variant::E: return "E";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "o") return Variant::O;
  if (s == "so") return Variant::SO;
  if (s == "r") return Variant::R;
  if (s == "e") return Variant::E;
  throw std::invalid_argument("unknown chase variant: " + std::string(text));
}

std::string to_string(ChaseStatus s) {
  switch (s) {
    case ChaseStatus::Terminated: return "terminated";
    case ChaseStatus::DepthCapReached: return "depth-cap-reached";
    case ChaseStatus::TriggerCapReached: return "trigger-cap-reached";
  }
  return "?";
}

namespace {

std::vector<Atom> new_atoms(const Derivation& d, const Trigger& t) {
  std::vector<Atom> out;
  for (Atom& a : t.output(d.naming())) {
    if (!d.atoms().contains(a)) out.push_back(std::move(a));
  }
  return out;
}

bool retracts_onto(const Derivation& d, const std::vector<Atom>& fresh) {
  HomSearchSpec spec;
  spec.source = fresh;
  spec.target = &d.atoms();
  for (Term t : term_inventory(fresh).all) {
    if (d.atoms().mentions(t)) spec.frozen.push_back(t);
  }
  return find_homomorphism(spec).has_value();
}

}  // namespace

bool is_applicable(Variant x, const Derivation& d, const Trigger& t) {
  if (!d.supports(t)) throw SupportNotPresent("trigger " + to_string(t) + " is not supported");
  switch (x) {
    case Variant::O:
      return !d.contains_trigger(t);
    case Variant::SO:
      return !d.frontier_used(t);
    case Variant::R: {
      std::vector<Atom> fresh = new_atoms(d, t);
      return !fresh.empty() && !retracts_onto(d, fresh);
    }
    case Variant::E: {
      std::vector<Atom> fresh = new_atoms(d, t);
      if (fresh.empty() || retracts_onto(d, fresh)) return false;
      HomSearchSpec spec;
      spec.source.assign(d.atoms().begin(), d.atoms().end());
      spec.source.insert(spec.source.end(), fresh.begin(), fresh.end());
      spec.target = &d.atoms();
      return !find_homomorphism(spec).has_value();
    }
  }
  return false;
}

std::vector<Trigger> x_applicable_triggers(Variant x, const Derivation& d) {
  std::vector<Trigger> out;
  for (Trigger& t : applicable_triggers(d.atoms(), d.rules())) {
    if (is_applicable(x, d, t)) out.push_back(std::move(t));
  }
  return out;
}

namespace {

// Non-applicability is permanent for SO and R, and O-applicable triggers stay
// applicable until applied. E-applicability can come back once the factbase
// grows, so such triggers are parked and looked at again when the queue runs
// dry.
ChaseOutcome run_free(Derivation d, const VariantPolicy& policy, const ChaseCaps& caps) {
  const RuleSet& rules = d.rules();
  TriggerOrder order(rules);
  std::set<Trigger, TriggerOrder> lex_queue(order);
  std::deque<Trigger> fifo_queue;
  std::unordered_set<Trigger, TriggerHash> seen;
  std::vector<Trigger> over_cap;

  auto push = [&](const Trigger& t) {
    if (seen.size() > caps.max_discovered || !seen.insert(t).second) return;
    if (policy.tie_break == TieBreak::Lex) {
      lex_queue.insert(t);
    } else {
      fifo_queue.push_back(t);
    }
  };
  auto pop = [&](Trigger& out) {
    if (policy.tie_break == TieBreak::Lex) {
      if (lex_queue.empty()) return false;
      out = *lex_queue.begin();
      lex_queue.erase(lex_queue.begin());
    } else {
      if (fifo_queue.empty()) return false;
      out = fifo_queue.front();
      fifo_queue.pop_front();
    }
    return true;
  };

  std::vector<Trigger> parked;
  auto unpark = [&] {
    std::vector<Trigger> keep;
    bool any = false;
    for (Trigger& p : parked) {
      if (is_applicable(policy.variant, d, p)) {
        any = true;
        if (policy.tie_break == TieBreak::Lex) {
          lex_queue.insert(std::move(p));
        } else {
          fifo_queue.push_back(std::move(p));
        }
      } else {
        keep.push_back(std::move(p));
      }
    }
    parked = std::move(keep);
    return any;
  };

  for (const Trigger& t : applicable_triggers(d.atoms(), rules)) push(t);
  if (seen.size() > caps.max_discovered) return ChaseOutcome{std::move(d), ChaseStatus::TriggerCapReached, 0};
  Trigger t;
  while (pop(t) || (unpark() && pop(t))) {
    if (!is_applicable(policy.variant, d, t)) {
      if (policy.variant == Variant::E && !d.contains_trigger(t)) parked.push_back(t);
      continue;
    }
    bool productive = d.is_productive(t);
    if (productive && d.trigger_rank(t) > caps.max_depth) {
      over_cap.push_back(t);
      continue;
    }
    if (d.length() >= caps.max_triggers || seen.size() > caps.max_discovered) {
      unsigned depth = d.depth();
      return ChaseOutcome{std::move(d), ChaseStatus::TriggerCapReached, depth};
    }
    const Step& step = d.extend(t);
    if (!step.produced.empty()) {
      std::vector<Atom> produced = step.produced;
      std::size_t room = caps.max_discovered + 1 - std::min(seen.size(), caps.max_discovered);
      for (const Trigger& n : triggers_touching(d.atoms(), rules, produced, room)) push(n);
    }
  }
  bool capped = std::any_of(over_cap.begin(), over_cap.end(), [&](const Trigger& c) {
    return is_applicable(policy.variant, d, c) && d.is_productive(c);
  });
  unsigned depth = d.depth();
  return ChaseOutcome{std::move(d), capped ? ChaseStatus::DepthCapReached : ChaseStatus::Terminated,
                      depth};
}

ChaseOutcome run_breadth_first(Derivation d, const VariantPolicy& policy, const ChaseCaps& caps) {
  const RuleSet& rules = d.rules();
  TriggerOrder order(rules);
  std::vector<Trigger> candidates = applicable_triggers(d.atoms(), rules);
  std::size_t discovered = candidates.size();
  std::vector<Trigger> parked;
  for (unsigned rank = 1;; ++rank) {
    if (policy.tie_break == TieBreak::Lex) std::stable_sort(candidates.begin(), candidates.end(), order);
    std::vector<Atom> delta;
    bool capped = false;
    for (const Trigger& t : candidates) {
      if (d.contains_trigger(t)) continue;
      if (!is_applicable(policy.variant, d, t)) {
        if (policy.variant == Variant::E) parked.push_back(t);
        continue;
      }
      if (rank > caps.max_depth && d.is_productive(t)) {
        capped = true;
        continue;
      }
      if (d.length() >= caps.max_triggers) {
        unsigned depth = d.depth();
        return ChaseOutcome{std::move(d), ChaseStatus::TriggerCapReached, depth};
      }
      const Step& step = d.extend(t);
      delta.insert(delta.end(), step.produced.begin(), step.produced.end());
    }
    if (delta.empty() && !capped) {
      // E triggers that became applicable again end the breadth-first order.
      std::vector<Trigger> again;
      for (const Trigger& p : parked) {
        if (!d.contains_trigger(p) && is_applicable(policy.variant, d, p)) again.push_back(p);
      }
      parked.clear();
      if (!again.empty()) {
        candidates = std::move(again);
        continue;
      }
    }
    if (capped || delta.empty()) {
      unsigned depth = d.depth();
      return ChaseOutcome{std::move(d), capped ? ChaseStatus::DepthCapReached : ChaseStatus::Terminated,
                          depth};
    }
    candidates = triggers_touching(d.atoms(), rules, delta, caps.max_discovered + 1);
    discovered += candidates.size();
    if (discovered > caps.max_discovered) {
      unsigned depth = d.depth();
      return ChaseOutcome{std::move(d), ChaseStatus::TriggerCapReached, depth};
    }
  }
}

}  // namespace

ChaseOutcome run(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                 const VariantPolicy& policy, const ChaseCaps& caps) {
  Derivation d(f, std::move(rules), policy.naming);
  return policy.breadth_first ? run_breadth_first(std::move(d), policy, caps)
                              : run_free(std::move(d), policy, caps);
}

std::vector<Atom> ancestors(const Derivation& d, const Atom& a) {
  d.rank_of(a);
  std::unordered_set<Atom, AtomHash> seen;
  std::vector<Atom> stack{a};
  std::vector<Atom> out;
  while (!stack.empty()) {
    Atom x = std::move(stack.back());
    stack.pop_back();
    auto p = d.producer(x);
    if (!p) continue;
    for (Atom& s : d.steps()[*p].trigger.support()) {
      if (seen.insert(s).second) {
        out.push_back(s);
        stack.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end(), atom_less);
  return out;
}

std::vector<Atom> prime_ancestors(const Derivation& d, const Atom& a) {
  std::vector<Atom> out;
  for (Atom& x : ancestors(d, a)) {
    if (d.rank_of(x) == 0) out.push_back(std::move(x));
  }
  return out;
}

Derivation restrict(const Derivation& d, const FactBase& g) {
  if (!g.subset_of(d.initial())) throw NotASubset("restriction factbase is not a subset of the initial one");
  Derivation r(g, d.rules_ptr(), d.naming());
  for (const Step& s : d.steps()) {
    if (r.supports(s.trigger)) r.extend(s.trigger);
  }
  return r;
}

Derivation to_rank_compatible(const Derivation& d) {
  if (!is_terminating(d, Variant::R)) throw NotTerminating("derivation is not a terminating R-derivation");
  std::vector<const Step*> order;
  for (const Step& s : d.steps()) order.push_back(&s);
  std::stable_sort(order.begin(), order.end(),
                   [](const Step* a, const Step* b) { return a->rank < b->rank; });
  Derivation r(d.initial(), d.rules_ptr(), d.naming());
  for (const Step* s : order) {
    if (r.supports(s->trigger) && is_applicable(Variant::R, r, s->trigger)) r.extend(s->trigger);
  }
  return r;
}

bool is_x_derivation(const Derivation& d, Variant x) {
  Derivation replay(d.initial(), d.rules_ptr(), d.naming());
  for (const Step& s : d.steps()) {
    if (!replay.supports(s.trigger) || !is_applicable(x, replay, s.trigger)) return false;
    replay.extend(s.trigger);
  }
  return true;
}

bool is_rank_compatible(const Derivation& d) {
  auto steps = d.steps();
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i - 1].rank > steps[i].rank) return false;
  }
  return true;
}

namespace {

bool saturated_up_to(const Derivation& prefix, Variant x, unsigned rank) {
  for (const Trigger& t : applicable_triggers(prefix.atoms(), prefix.rules())) {
    if (prefix.trigger_rank(t) <= rank && is_applicable(x, prefix, t)) return false;
  }
  return true;
}

}  // namespace

bool is_breadth_first(const Derivation& d, Variant x, bool final_rank_closed) {
  if (!is_rank_compatible(d)) return false;
  Derivation replay(d.initial(), d.rules_ptr(), d.naming());
  auto steps = d.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!replay.supports(steps[i].trigger) || !is_applicable(x, replay, steps[i].trigger)) return false;
    replay.extend(steps[i].trigger);
    bool mark = i + 1 < steps.size() ? steps[i].rank < steps[i + 1].rank : final_rank_closed;
    if (mark && !saturated_up_to(replay, x, steps[i].rank)) return false;
  }
  return true;
}

bool is_terminating(const Derivation& d, Variant x) {
  for (const Trigger& t : applicable_triggers(d.atoms(), d.rules())) {
    if (is_applicable(x, d, t)) return false;
  }
  return true;
}

}  // namespace kbound
