#include "kbound/bounded.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>

#include "kbound/canonical.hpp"
#include "kbound/enumerate.hpp"
#include "kbound/error.hpp"

namespace kbound {

namespace {

using Level = std::map<std::string, std::vector<Atom>>;

// Calls add on every factbase made of base plus one atom, where the atom may
// use up to arity fresh terms numbered in order of first use.
template <class Add>
void extensions(const std::vector<Atom>& base, const EnumerationSpec& spec, Add&& add) {
  std::vector<Term> existing = term_inventory(base).all;
  FactBase present{std::span<const Atom>(base)};
  for (const auto& [name, arity] : spec.signature.predicates()) {
    Predicate p(name);
    std::vector<Term> args(arity);
    std::vector<Term> fresh;
    std::function<void(std::size_t)> fill = [&](std::size_t pos) {
      if (pos == arity) {
        Atom a(p, args);
        if (present.contains(a)) return;
        std::vector<Atom> next = base;
        next.push_back(std::move(a));
        add(std::move(next));
        return;
      }
      for (Term t : existing) {
        args[pos] = t;
        fill(pos + 1);
      }
      for (std::size_t j = 0; j < fresh.size(); ++j) {
        args[pos] = fresh[j];
        fill(pos + 1);
      }
      std::string index = std::to_string(fresh.size());
      std::vector<Term> kinds{Term::constant("fresh_c" + index)};
      if (spec.kinds == TermKinds::Mixed) kinds.push_back(Term::variable("Fresh_v" + index));
      for (Term t : kinds) {
        fresh.push_back(t);
        args[pos] = t;
        fill(pos + 1);
        fresh.pop_back();
      }
    };
    fill(0);
  }
}

}  // namespace

bool for_each_factbase(const EnumerationSpec& spec, const std::function<bool(const FactBase&)>& visit,
                       std::optional<std::chrono::steady_clock::time_point> deadline) {
  Level level;
  auto expired = [&] { return deadline && std::chrono::steady_clock::now() > *deadline; };
  auto grow = [&](const std::vector<std::vector<Atom>>& bases) {
    Level next;
    for (const auto& base : bases) {
      extensions(base, spec, [&](std::vector<Atom> atoms) {
        CanonicalLabeling lab = canonical_labeling(FactBase{std::span<const Atom>(atoms)});
        next.try_emplace(std::move(lab.form), lab.representative.atoms().begin(),
                         lab.representative.atoms().end());
      });
      if (expired()) return std::optional<Level>();
    }
    return std::optional<Level>(std::move(next));
  };
  std::vector<std::vector<Atom>> bases{{}};
  for (std::size_t size = 1; size <= spec.max_atoms; ++size) {
    auto next = grow(bases);
    if (!next) return false;
    level = std::move(*next);
    if (level.empty()) return true;
    for (const auto& [form, atoms] : level) {
      if (!visit(FactBase{std::span<const Atom>(atoms)})) return true;
      if (expired()) return false;
    }
    bases.clear();
    if (size == spec.max_atoms) break;
    for (auto& [form, atoms] : level) bases.push_back(std::move(atoms));
  }
  return true;
}

std::vector<FactBase> enumerate_factbases(const EnumerationSpec& spec) {
  std::vector<FactBase> out;
  for_each_factbase(spec, [&](const FactBase& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::string to_string(BoundedVariant v) {
  switch (v) {
    case BoundedVariant::O: return "o";
    case BoundedVariant::BfO: return "bfo";
    case BoundedVariant::SO: return "so";
    case BoundedVariant::BfSO: return "bfso";
    case BoundedVariant::R: return "r";
    case BoundedVariant::BfR: return "bfr";
  }
  return "?";
}

BoundedVariant parse_bounded_variant(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "o") return BoundedVariant::O;
  if (s == "bfo") return BoundedVariant::BfO;
  if (s == "so") return BoundedVariant::SO;
  if (s == "bfso") return BoundedVariant::BfSO;
  if (s == "r") return BoundedVariant::R;
  if (s == "bfr") return BoundedVariant::BfR;
  throw std::invalid_argument("unknown variant: " + std::string(text));
}

std::string to_string(Quantifier q) { return q == Quantifier::ForAll ? "all" : "exists"; }

VariantPolicy policy_for(BoundedVariant v) {
  VariantPolicy p;
  switch (v) {
    case BoundedVariant::O: p.variant = Variant::O; break;
    case BoundedVariant::BfO: p.variant = Variant::O; p.breadth_first = true; break;
    case BoundedVariant::SO: p.variant = Variant::SO; break;
    case BoundedVariant::BfSO: p.variant = Variant::SO; p.breadth_first = true; break;
    case BoundedVariant::R: p.variant = Variant::R; break;
    case BoundedVariant::BfR: p.variant = Variant::R; p.breadth_first = true; break;
  }
  return p;
}

std::size_t prime_bound(const RuleSet& rules, unsigned k) {
  if (rules.empty()) throw EmptyRuleset("empty ruleset");
  std::size_t b = rules.max_body_size();
  std::size_t bound = 1;
  for (unsigned i = 0; i <= k; ++i) {
    if (bound > std::numeric_limits<std::size_t>::max() / std::max<std::size_t>(b, 1)) {
      return std::numeric_limits<std::size_t>::max();
    }
    bound *= b;
  }
  return bound;
}

BoundednessVerdict decide(const BoundednessQuery& query, const Budget& budget) {
  BoundednessVerdict verdict;
  BoundedVariant variant = query.variant;
  if (query.quantifier == Quantifier::Exists) {
    switch (variant) {
      case BoundedVariant::O:
      case BoundedVariant::BfO: variant = BoundedVariant::BfO; break;
      case BoundedVariant::SO:
      case BoundedVariant::BfSO: variant = BoundedVariant::BfSO; break;
      default: throw InvalidQuery("existential boundedness is not supported for the restricted chase");
    }
  }
  verdict.decided_as = variant;
  if (!query.rules || query.rules->empty()) {
    verdict.bounded = true;
    return verdict;
  }
  const RuleSet& rules = *query.rules;
  VariantPolicy policy = policy_for(variant);
  bool restricted = policy.variant == Variant::R;
  EnumerationSpec spec;
  spec.signature = rules.body_signature();
  spec.max_atoms = prime_bound(rules, query.k);
  spec.kinds = query.term_kinds.value_or(restricted ? TermKinds::Mixed : TermKinds::ConstantsOnly);

  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (budget.time_limit.count() < 1e9) {
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget.time_limit);
  }
  EnumerationLimits limits;
  limits.deadline = deadline;
  limits.single_path = variant == BoundedVariant::BfO || variant == BoundedVariant::BfSO;

  bool finished = for_each_factbase(
      spec,
      [&](const FactBase& f) {
        if (verdict.factbases_checked >= budget.max_factbases) {
          verdict.budget_exceeded = true;
          return false;
        }
        ++verdict.factbases_checked;
        limits.max_nodes = budget.max_derivations > verdict.derivations_explored
                               ? budget.max_derivations - verdict.derivations_explored
                               : 0;
        EnumerationStats stats = enumerate_derivations(
            f, query.rules, policy, query.k,
            [&](const Derivation& d, bool terminated) {
              if (terminated) return true;
              verdict.witness = Witness{f, d};
              return false;
            },
            limits);
        verdict.derivations_explored += stats.nodes;
        if (verdict.witness) return false;
        if (stats.budget_exceeded) {
          verdict.budget_exceeded = true;
          return false;
        }
        return true;
      },
      deadline);
  if (!finished && !verdict.witness) verdict.budget_exceeded = true;
  if (verdict.witness) verdict.budget_exceeded = false;
  verdict.bounded = !verdict.witness && !verdict.budget_exceeded;
  return verdict;
}

}  // namespace kbound
