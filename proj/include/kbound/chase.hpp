#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kbound/derivation.hpp"

namespace kbound {

enum class Variant { O, SO, R, E };
enum class TieBreak { Lex, Fifo };

struct VariantPolicy {
  Variant variant = Variant::O;
  bool breadth_first = false;
  TieBreak tie_break = TieBreak::Lex;
  NullNaming naming = NullNaming::Trigger;
};

std::string to_string(Variant v);
/// Accepts o, so, r, e in any case; throws std::invalid_argument otherwise.
Variant parse_variant(std::string_view text);

/// X-applicability of t on d. Throws SupportNotPresent.
bool is_applicable(Variant x, const Derivation& d, const Trigger& t);

/// Triggers on the atoms of d that are X-applicable, in TriggerOrder.
std::vector<Trigger> x_applicable_triggers(Variant x, const Derivation& d);

struct ChaseCaps {
  unsigned max_depth = 100;
  std::size_t max_triggers = 100000;
  /// Distinct triggers found on the derived atoms, applied or not. Exceeding
  /// it is reported as TriggerCapReached.
  std::size_t max_discovered = 1'000'000;
};

enum class ChaseStatus { Terminated, DepthCapReached, TriggerCapReached };

std::string to_string(ChaseStatus s);

struct ChaseOutcome {
  Derivation derivation;
  ChaseStatus status;
  unsigned depth;
};

/// Runs one derivation. Breadth-first runs saturate each rank before moving
/// on; otherwise triggers are applied greedily in tie-break order. A trigger
/// that would create an atom of rank above max_depth is never applied.
ChaseOutcome run(const FactBase& f, std::shared_ptr<const RuleSet> rules,
                 const VariantPolicy& policy, const ChaseCaps& caps = {});

/// Atoms with a non-empty path to a in the chase graph, in canonical order.
/// Throws AtomNotInDerivation.
std::vector<Atom> ancestors(const Derivation& d, const Atom& a);
/// Ancestors of rank 0.
std::vector<Atom> prime_ancestors(const Derivation& d, const Atom& a);

/// The derivation from g that replays the triggers of d in order, keeping
/// those whose support is present. Throws NotASubset.
Derivation restrict(const Derivation& d, const FactBase& g);

/// Stable-sorts the triggers of a terminating R-derivation by rank and replays
/// them as a restricted derivation. Throws NotTerminating.
Derivation to_rank_compatible(const Derivation& d);

/// Every step was X-applicable on the preceding prefix.
bool is_x_derivation(const Derivation& d, Variant x);
bool is_rank_compatible(const Derivation& d);
/// Rank-compatible X-derivation in which no X-applicable trigger of rank at
/// most r remains when rank r is left. With final_rank_closed the last rank
/// must be saturated as well.
bool is_breadth_first(const Derivation& d, Variant x, bool final_rank_closed = true);
/// No X-applicable trigger is left, i.e. the finite derivation is fair.
bool is_terminating(const Derivation& d, Variant x);

}  // namespace kbound
