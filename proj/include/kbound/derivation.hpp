#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "kbound/factbase.hpp"
#include "kbound/rule.hpp"
#include "kbound/trigger.hpp"

namespace kbound {

struct Step {
  Trigger trigger;
  /// Atoms of the output that were new when the trigger was applied.
  std::vector<Atom> produced;
  unsigned rank = 0;
};

struct ChaseEdge {
  Atom from;
  Atom to;
  std::size_t step;
};

/// Nodes are all atoms of the derivation; one edge per (support atom,
/// produced atom) pair.
struct ChaseGraph {
  std::vector<Atom> nodes;
  std::vector<unsigned> ranks;
  std::vector<ChaseEdge> edges;
};

/// A finite derivation: an initial factbase and a sequence of distinct
/// triggers, each applied to the atoms derived so far. Keeps the rank and the
/// producing step of every atom.
class Derivation {
 public:
  Derivation(FactBase initial, std::shared_ptr<const RuleSet> rules,
             NullNaming naming = NullNaming::Trigger);

  const FactBase& initial() const { return initial_; }
  /// Every atom derived so far.
  const FactBase& atoms() const { return atoms_; }
  const RuleSet& rules() const { return *rules_; }
  const std::shared_ptr<const RuleSet>& rules_ptr() const { return rules_; }
  NullNaming naming() const { return naming_; }

  std::span<const Step> steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  std::vector<Trigger> triggers() const;

  bool contains_trigger(const Trigger& t) const { return applied_.count(t) != 0; }
  /// Some applied trigger of the same rule agrees with t on the frontier.
  bool frontier_used(const Trigger& t) const;
  bool supports(const Trigger& t) const;
  /// The output of t is not included in the derived atoms.
  bool is_productive(const Trigger& t) const;

  std::optional<unsigned> rank(const Atom& a) const;
  /// Throws AtomNotInDerivation.
  unsigned rank_of(const Atom& a) const;
  unsigned rank_at(std::size_t atom_index) const { return rank_[atom_index]; }
  /// Throws SupportNotPresent.
  unsigned trigger_rank(const Trigger& t) const;
  /// Step index of the producer; nullopt for initial atoms. Throws
  /// AtomNotInDerivation.
  std::optional<std::size_t> producer(const Atom& a) const;
  unsigned depth() const { return depth_; }

  /// Appends t. Throws SupportNotPresent or DuplicateTrigger.
  const Step& extend(const Trigger& t);

  /// F_i: the initial atoms plus everything produced by the first i steps.
  FactBase factbase_at(std::size_t i) const;
  Derivation prefix(std::size_t n) const;
  ChaseGraph chase_graph() const;

 private:
  struct FrontierKey {
    std::string rule;
    std::vector<Term> image;
    friend bool operator==(const FrontierKey&, const FrontierKey&) = default;
  };
  struct FrontierKeyHash {
    std::size_t operator()(const FrontierKey& k) const noexcept;
  };

  std::shared_ptr<const RuleSet> rules_;
  NullNaming naming_;
  FactBase initial_;
  FactBase atoms_;
  std::vector<unsigned> rank_;
  std::vector<std::int64_t> producer_;
  std::vector<Step> steps_;
  std::unordered_set<Trigger, TriggerHash> applied_;
  std::unordered_set<FrontierKey, FrontierKeyHash> frontier_keys_;
  unsigned depth_ = 0;
};

}  // namespace kbound
