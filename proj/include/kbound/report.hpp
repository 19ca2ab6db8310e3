#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "kbound/bounded.hpp"
#include "kbound/chase.hpp"

namespace kbound {

using Json = nlohmann::ordered_json;

// Terms print as their names, with '?' in front of variables and nulls.
// Atoms print as pred(t1,...,tn). Every null mentioned in a report is listed
// in its "nulls" table with the rule, variable and bindings that created it,
// so reports re-parse into the same terms in another process.

std::string term_to_json(Term t);
std::string atom_to_json(const Atom& a);

/// Resolves '?' names through a nulls table (as written by the reports);
/// other '?' names are variables. Throws ParseError on malformed input.
class TermReader {
 public:
  explicit TermReader(const Json& nulls = Json::array());
  Term term(const std::string& text) const;
  Atom atom(const std::string& text) const;

 private:
  Json nulls_;
};

Json outcome_to_json(const ChaseOutcome& outcome, const VariantPolicy& policy);
Json verdict_to_json(const BoundednessVerdict& verdict, const BoundednessQuery& query);

std::string outcome_to_text(const ChaseOutcome& outcome);
std::string verdict_to_text(const BoundednessVerdict& verdict, const BoundednessQuery& query);

/// Graphviz digraph: one node per atom labeled with its rank, one edge per
/// (support atom, produced atom) pair labeled with the rule id.
std::string chase_graph_to_dot(const Derivation& d);

struct ReplayResult {
  std::optional<Derivation> derivation;
  /// Every step was applicable in the recorded variant.
  bool valid = false;
  /// Every step produced the recorded atoms at the recorded rank.
  bool ranks_match = false;
  std::string message;
};

/// Re-applies the steps of a chase or verdict report in their recorded order.
/// Throws ParseError when the report is malformed.
ReplayResult replay(const Json& report, std::shared_ptr<const RuleSet> rules);

}  // namespace kbound
