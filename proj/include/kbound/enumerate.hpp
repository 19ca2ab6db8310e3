#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "kbound/chase.hpp"

namespace kbound {

struct EnumerationLimits {
  /// Search nodes (derivation prefixes) to visit before giving up.
  std::size_t max_nodes = 10'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Follow one derivation only, choosing triggers in canonical order.
  bool single_path = false;
  /// Skip prefixes whose state (atoms with ranks, and the applied triggers
  /// or frontier classes that still matter for the variant) was seen before.
  bool memoize = true;
};

struct EnumerationStats {
  std::size_t nodes = 0;
  std::size_t emitted = 0;
  bool budget_exceeded = false;
  bool stopped = false;
};

/// Receives each maximal derivation: terminated (no X-applicable trigger
/// left) or truncated right after its first atom of rank max_depth + 1.
/// Returning false stops the enumeration.
using DerivationVisitor = std::function<bool(const Derivation& d, bool terminated)>;

/// Depth-first enumeration of the X-derivations from (f, rules), restricted
/// to breadth-first ones when the policy asks for it. Triggers that produce
/// nothing are appended without branching, since they change no atom and no
/// rank; for bf-O the order inside a rank is fixed for the same reason.
EnumerationStats enumerate_derivations(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                                       const VariantPolicy& policy, unsigned max_depth,
                                       const DerivationVisitor& visit,
                                       const EnumerationLimits& limits = {});

/// At most limit maximal derivations.
std::vector<Derivation> collect_derivations(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                                            const VariantPolicy& policy, unsigned max_depth,
                                            std::size_t limit = 10000);

struct AncestryCheck {
  bool preserved = false;
  /// A derivation from the prime ancestors producing the atom at its rank.
  std::optional<Derivation> witness;
};

/// Searches for an X-derivation from the prime ancestors of a that produces a
/// at the rank it has in d. Throws AtomNotInDerivation, and
/// std::invalid_argument when a is an initial atom.
AncestryCheck check_ancestry_preservation(const Derivation& d, const Atom& a,
                                          const VariantPolicy& policy,
                                          const EnumerationLimits& limits = {});

}  // namespace kbound
