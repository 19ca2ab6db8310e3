#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kbound/rule.hpp"

namespace kbound {

/// f_R^z(frontier) standing for the null a trigger of R creates for z.
struct SkolemTerm {
  std::string function;
  std::vector<Term> args;
};

using SkolemArg = std::variant<Term, SkolemTerm>;

struct SkolemAtom {
  Predicate predicate;
  std::vector<SkolemArg> args;
};

struct SkolemRule {
  std::string id;
  std::vector<Atom> body;
  std::vector<SkolemAtom> head;
};

/// Function-free presentation of the skolemized rules. A rule with
/// existentials becomes one rule per head atom, each existential z replaced
/// by f_R^z applied to the frontier. Datalog rules are kept as they are.
std::vector<SkolemRule> skolemize(const RuleSet& rules);

std::string to_string(const SkolemTerm& t);
std::string to_string(const SkolemRule& r);

}  // namespace kbound
