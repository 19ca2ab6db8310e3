#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbound/chase.hpp"

namespace kbound {

enum class TermKinds { ConstantsOnly, Mixed };

struct EnumerationSpec {
  Signature signature;
  std::size_t max_atoms = 1;
  TermKinds kinds = TermKinds::ConstantsOnly;
};

/// Visits one representative per quasi-isomorphism class of non-empty
/// factbases over the signature with at most max_atoms atoms, by increasing
/// size and, within a size, by canonical form. Stops when visit returns
/// false. Returns false if the deadline passed first.
bool for_each_factbase(const EnumerationSpec& spec, const std::function<bool(const FactBase&)>& visit,
                       std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

std::vector<FactBase> enumerate_factbases(const EnumerationSpec& spec);

enum class BoundedVariant { O, BfO, SO, BfSO, R, BfR };
enum class Quantifier { ForAll, Exists };

std::string to_string(BoundedVariant v);
/// Accepts o, bfo, so, bfso, r, bfr in any case.
BoundedVariant parse_bounded_variant(std::string_view text);
std::string to_string(Quantifier q);
VariantPolicy policy_for(BoundedVariant v);

struct BoundednessQuery {
  std::shared_ptr<const RuleSet> rules;
  BoundedVariant variant = BoundedVariant::O;
  Quantifier quantifier = Quantifier::ForAll;
  unsigned k = 0;
  /// Overrides the default: constants only for the oblivious and
  /// semi-oblivious families, mixed for the restricted ones.
  std::optional<TermKinds> term_kinds;
};

struct Budget {
  std::size_t max_factbases = 1'000'000;
  std::size_t max_derivations = 10'000'000;
  std::chrono::duration<double> time_limit = std::chrono::seconds(600);
};

struct Witness {
  FactBase factbase;
  /// Reaches rank k + 1.
  Derivation derivation;
};

struct BoundednessVerdict {
  /// Meaningless when budget_exceeded is set.
  bool bounded = false;
  std::optional<Witness> witness;
  std::size_t factbases_checked = 0;
  std::size_t derivations_explored = 0;
  bool budget_exceeded = false;
  /// The universal query that was actually decided.
  BoundedVariant decided_as = BoundedVariant::O;
};

/// b^(k+1) for the largest body size b, saturating. Throws EmptyRuleset.
std::size_t prime_bound(const RuleSet& rules, unsigned k);

/// Decides k-boundedness by checking every factbase of at most b^(k+1) atoms,
/// up to quasi-isomorphism, for a derivation reaching rank k + 1. The
/// existential question for the oblivious and semi-oblivious chases is
/// answered through the universal one for their breadth-first versions.
/// Throws InvalidQuery for the existential question on a restricted variant.
BoundednessVerdict decide(const BoundednessQuery& query, const Budget& budget = {});

}  // namespace kbound
