#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kbound/factbase.hpp"
#include "kbound/rule.hpp"
#include "kbound/substitution.hpp"

namespace kbound {

/// How fresh nulls are indexed: by the whole trigger (default) or by the
/// frontier restriction of its substitution only.
enum class NullNaming { Trigger, Frontier };

/// A rule paired with a substitution of its body variables.
class Trigger {
 public:
  Trigger() = default;
  /// Throws std::invalid_argument if pi leaves a body variable unbound.
  Trigger(RulePtr rule, const Substitution& pi);
  /// image is aligned with rule->body_variables().
  Trigger(RulePtr rule, std::vector<Term> image);

  const Rule& rule() const { return *rule_; }
  const RulePtr& rule_ptr() const { return rule_; }
  const std::vector<Term>& image() const { return image_; }
  Substitution substitution() const;
  std::vector<Term> frontier_image() const;

  /// Canonical text of the rule id and the sorted bindings.
  std::string key() const;

  /// pi(body), duplicates removed.
  std::vector<Atom> support() const;
  /// The head under pi extended with one fresh null per existential.
  std::vector<Atom> output(NullNaming naming = NullNaming::Trigger) const;
  Term null_for(Term existential, NullNaming naming = NullNaming::Trigger) const;

  friend bool operator==(const Trigger& a, const Trigger& b) {
    return a.image_ == b.image_ && (a.rule_ == b.rule_ || a.rule_->id() == b.rule_->id());
  }

 private:
  RulePtr rule_;
  std::vector<Term> image_;
};

struct TriggerHash {
  std::size_t operator()(const Trigger& t) const noexcept;
};

std::string to_string(const Trigger& t);

/// Orders triggers by rule declaration order, then by substitution in
/// canonical term order.
class TriggerOrder {
 public:
  explicit TriggerOrder(const RuleSet& rules);
  bool operator()(const Trigger& a, const Trigger& b) const;
  std::size_t rule_index(const Trigger& t) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

/// Every trigger for the rules on f, in TriggerOrder.
std::vector<Trigger> applicable_triggers(const FactBase& f, const RuleSet& rules);

/// Triggers on f whose support meets delta, without duplicates, in discovery
/// order. Stops after limit triggers.
std::vector<Trigger> triggers_touching(const FactBase& f, const RuleSet& rules,
                                       std::span<const Atom> delta,
                                       std::size_t limit = std::numeric_limits<std::size_t>::max());

/// f plus output(t). Throws SupportNotPresent.
FactBase immediate_derivation(const FactBase& f, const Trigger& t,
                              NullNaming naming = NullNaming::Trigger);

}  // namespace kbound
