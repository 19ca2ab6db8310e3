#include "kbound/rule.hpp"

#include <algorithm>
#include <set>

#include "kbound/error.hpp"

namespace kbound {

namespace {

std::vector<Term> variables_of(const std::vector<Atom>& atoms) {
  std::vector<Term> v;
  for (const Atom& a : atoms) {
    for (Term t : a.args) {
      if (t.is_variable()) v.push_back(t);
    }
  }
  std::sort(v.begin(), v.end(), term_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string atoms_text(const std::vector<Atom>& atoms) {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(atoms[i]);
  }
  return s;
}

}  // namespace

Rule::Rule(std::string id, std::vector<Atom> body, std::vector<Atom> head)
    : id_(std::move(id)), body_(std::move(body)), head_(std::move(head)) {
  if (body_.empty()) throw InvalidRule("rule " + id_ + " has an empty body");
  if (head_.empty()) throw InvalidRule("rule " + id_ + " has an empty head");
  for (const auto* part : {&body_, &head_}) {
    for (const Atom& a : *part) {
      for (Term t : a.args) {
        if (t.is_null()) throw InvalidRule("rule " + id_ + " mentions a null");
      }
    }
  }
  body_vars_ = variables_of(body_);
  std::vector<Term> head_vars = variables_of(head_);
  std::set_intersection(body_vars_.begin(), body_vars_.end(), head_vars.begin(), head_vars.end(),
                        std::back_inserter(frontier_), term_less);
  std::set_difference(head_vars.begin(), head_vars.end(), body_vars_.begin(), body_vars_.end(),
                      std::back_inserter(existentials_), term_less);
}

std::optional<std::size_t> Rule::body_variable_index(Term v) const {
  auto it = std::lower_bound(body_vars_.begin(), body_vars_.end(), v, term_less);
  if (it == body_vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - body_vars_.begin());
}

std::string to_string(const Rule& r) {
  return r.id() + ": " + atoms_text(r.body()) + " -> " + atoms_text(r.head());
}

RuleSet::RuleSet(std::initializer_list<Rule> rules) {
  for (const Rule& r : rules) add(r);
}

void RuleSet::add(Rule r) {
  if (find(r.id())) throw DuplicateRuleId("duplicate rule id " + r.id());
  rules_.push_back(std::make_shared<const Rule>(std::move(r)));
}

RulePtr RuleSet::find(const std::string& id) const {
  for (const RulePtr& r : rules_) {
    if (r->id() == id) return r;
  }
  return nullptr;
}

std::optional<std::size_t> RuleSet::index_of(const Rule& r) const {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].get() == &r || rules_[i]->id() == r.id()) return i;
  }
  return std::nullopt;
}

std::size_t RuleSet::max_body_size() const {
  std::size_t b = 0;
  for (const RulePtr& r : rules_) b = std::max(b, r->body().size());
  return b;
}

Signature RuleSet::signature() const {
  Signature s;
  for (const RulePtr& r : rules_) {
    for (const auto* part : {&r->body(), &r->head()}) {
      for (const Atom& a : *part) {
        s.declare(a.predicate.name(), a.arity());
        for (Term t : a.args) s.add_constant(t);
      }
    }
  }
  return s;
}

Signature RuleSet::body_signature() const {
  Signature s;
  for (const RulePtr& r : rules_) {
    for (const Atom& a : r->body()) s.declare(a.predicate.name(), a.arity());
  }
  return s;
}

}  // namespace kbound
