#pragma once

#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kbound/chase.hpp"
#include "kbound/syntax.hpp"

namespace testkb {

inline std::shared_ptr<const kbound::RuleSet> rules(std::string_view text) {
  return std::make_shared<const kbound::RuleSet>(kbound::parse_rules(text));
}

inline kbound::FactBase facts(std::string_view text) { return kbound::parse_facts(text); }

/// A single atom written as a fact, e.g. "p(a,X)".
inline kbound::Atom atom(std::string_view text) {
  kbound::FactBase f = kbound::parse_facts(std::string(text) + ".");
  return f[0];
}

inline kbound::Trigger trigger(const std::shared_ptr<const kbound::RuleSet>& rs, const std::string& id,
                               std::initializer_list<std::pair<const char*, kbound::Term>> binding) {
  kbound::Substitution pi;
  for (const auto& [var, value] : binding) pi.bind(kbound::Term::variable(var), value);
  return kbound::Trigger(rs->find(id), pi);
}

inline kbound::Term c(std::string_view name) { return kbound::Term::constant(name); }
inline kbound::Term v(std::string_view name) { return kbound::Term::variable(name); }

struct RandomKb {
  std::shared_ptr<const kbound::RuleSet> rules;
  kbound::FactBase facts;
  std::string text;
};

/// At most 2 predicates of arity at most 2, 1 to 3 rules with 1 or 2 body
/// atoms and 1 or 2 head atoms, and 1 to 3 facts over a, b, c and one
/// variable.
RandomKb random_kb(std::mt19937& rng);

/// Between min_atoms and max_atoms atoms over p/2 and q/1 and the given
/// terms.
kbound::FactBase random_factbase(std::mt19937& rng, const std::vector<kbound::Term>& terms,
                                 std::size_t min_atoms, std::size_t max_atoms);

}  // namespace testkb
