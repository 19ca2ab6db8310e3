#pragma once

#include <string>
#include <string_view>

#include "kbound/factbase.hpp"
#include "kbound/rule.hpp"

namespace kbound {

// Text format, one statement per '.':
//
//   # comment
//   @R1 parent(X,Y) -> ancestor(X,Y).
//   ancestor(X,Y), parent(Y,Z) -> ancestor(X,Z).
//   parent(alice,bob).
//
// Identifiers starting with an uppercase letter or '_' are variables; other
// identifiers, and numbers, are constants. Predicates start with a lowercase
// letter. Head variables that do not occur in the body are existential.
// Unlabeled rules are named R<n> after their position, skipping taken names.

/// Throws ParseError, or ArityConflict when a predicate is used with two
/// arities (also against what signature already holds). Declares every
/// predicate into signature when given.
RuleSet parse_rules(std::string_view text, Signature* signature = nullptr);
FactBase parse_facts(std::string_view text, Signature* signature = nullptr);

std::string print_rule(const Rule& r);
/// One rule per line.
std::string print_rules(const RuleSet& rules);
/// One atom per line, canonical order.
std::string print_facts(const FactBase& f);

}  // namespace kbound
