#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kbound/atom.hpp"

namespace kbound {

/// An existential rule body -> head. Free variables are variables of the
/// body; head variables absent from the body are existentially quantified.
class Rule {
 public:
  /// Throws InvalidRule on an empty body or head, or on nulls in the rule.
  Rule(std::string id, std::vector<Atom> body, std::vector<Atom> head);

  const std::string& id() const { return id_; }
  const std::vector<Atom>& body() const { return body_; }
  const std::vector<Atom>& head() const { return head_; }
  /// Sorted variables of the body.
  const std::vector<Term>& body_variables() const { return body_vars_; }
  /// Body variables that occur in the head, sorted.
  const std::vector<Term>& frontier() const { return frontier_; }
  /// Head variables absent from the body, sorted.
  const std::vector<Term>& existentials() const { return existentials_; }
  bool is_datalog() const { return existentials_.empty(); }
  /// Position of v in body_variables(), if any.
  std::optional<std::size_t> body_variable_index(Term v) const;

 private:
  std::string id_;
  std::vector<Atom> body_;
  std::vector<Atom> head_;
  std::vector<Term> body_vars_;
  std::vector<Term> frontier_;
  std::vector<Term> existentials_;
};

using RulePtr = std::shared_ptr<const Rule>;

std::string to_string(const Rule& r);

/// Rules in declaration order, with unique ids.
class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::initializer_list<Rule> rules);

  /// Throws DuplicateRuleId.
  void add(Rule r);

  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const RulePtr& operator[](std::size_t i) const { return rules_[i]; }
  auto begin() const { return rules_.begin(); }
  auto end() const { return rules_.end(); }

  RulePtr find(const std::string& id) const;
  std::optional<std::size_t> index_of(const Rule& r) const;
  /// Largest body size.
  std::size_t max_body_size() const;
  /// Predicates and arities of all rule atoms.
  Signature signature() const;
  /// Predicates and arities of the rule bodies.
  Signature body_signature() const;

 private:
  std::vector<RulePtr> rules_;
};

}  // namespace kbound
