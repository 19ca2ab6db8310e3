#include "kbound/trigger.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "kbound/error.hpp"
#include "kbound/homomorphism.hpp"

namespace kbound {

Trigger::Trigger(RulePtr rule, const Substitution& pi) : rule_(std::move(rule)) {
  image_.reserve(rule_->body_variables().size());
  for (Term v : rule_->body_variables()) {
    auto t = pi.lookup(v);
    if (!t) throw std::invalid_argument("trigger for " + rule_->id() + " leaves " + v.name() + " unbound");
    image_.push_back(*t);
  }
}

Trigger::Trigger(RulePtr rule, std::vector<Term> image)
    : rule_(std::move(rule)), image_(std::move(image)) {
  if (image_.size() != rule_->body_variables().size()) {
    throw std::invalid_argument("trigger image size does not match rule " + rule_->id());
  }
}

Substitution Trigger::substitution() const {
  Substitution s;
  const auto& vars = rule_->body_variables();
  for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], image_[i]);
  return s;
}

std::vector<Term> Trigger::frontier_image() const {
  std::vector<Term> v;
  v.reserve(rule_->frontier().size());
  for (Term f : rule_->frontier()) v.push_back(image_[*rule_->body_variable_index(f)]);
  return v;
}

std::string Trigger::key() const {
  std::string s = rule_->id() + "{";
  const auto& vars = rule_->body_variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s.push_back(',');
    s += vars[i].name() + "=" + image_[i].name();
  }
  return s + "}";
}

std::vector<Atom> Trigger::support() const {
  std::vector<Atom> out;
  for (const Atom& b : rule_->body()) {
    std::vector<Term> args;
    args.reserve(b.args.size());
    for (Term t : b.args) args.push_back(t.is_variable() ? image_[*rule_->body_variable_index(t)] : t);
    Atom a(b.predicate, std::move(args));
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  }
  return out;
}

Term Trigger::null_for(Term existential, NullNaming naming) const {
  NullOrigin origin;
  origin.rule_id = rule_->id();
  origin.variable = existential.name();
  const auto& vars = naming == NullNaming::Trigger ? rule_->body_variables() : rule_->frontier();
  for (Term v : vars) origin.bindings.emplace_back(v.name(), image_[*rule_->body_variable_index(v)]);
  std::sort(origin.bindings.begin(), origin.bindings.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return Term::null(origin);
}

std::vector<Atom> Trigger::output(NullNaming naming) const {
  std::unordered_map<Term, Term> nulls;
  for (Term z : rule_->existentials()) nulls.emplace(z, null_for(z, naming));
  std::vector<Atom> out;
  for (const Atom& h : rule_->head()) {
    std::vector<Term> args;
    args.reserve(h.args.size());
    for (Term t : h.args) {
      if (!t.is_variable()) {
        args.push_back(t);
      } else if (auto i = rule_->body_variable_index(t)) {
        args.push_back(image_[*i]);
      } else {
        args.push_back(nulls.at(t));
      }
    }
    Atom a(h.predicate, std::move(args));
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
  }
  return out;
}

std::size_t TriggerHash::operator()(const Trigger& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.rule().id());
  for (Term x : t.image()) h = (h ^ x.id()) * 0x100000001b3ull + (h >> 31);
  return h;
}

std::string to_string(const Trigger& t) {
  std::string s = "(" + t.rule().id() + ", {";
  const auto& vars = t.rule().body_variables();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ", ";
    s += vars[i].name() + "->" + to_string(t.image()[i]);
  }
  return s + "})";
}

TriggerOrder::TriggerOrder(const RuleSet& rules) {
  for (std::size_t i = 0; i < rules.size(); ++i) index_.emplace(rules[i]->id(), i);
}

std::size_t TriggerOrder::rule_index(const Trigger& t) const {
  auto it = index_.find(t.rule().id());
  return it == index_.end() ? index_.size() : it->second;
}

bool TriggerOrder::operator()(const Trigger& a, const Trigger& b) const {
  std::size_t ia = rule_index(a);
  std::size_t ib = rule_index(b);
  if (ia != ib) return ia < ib;
  if (a.rule().id() != b.rule().id()) return a.rule().id() < b.rule().id();
  return std::lexicographical_compare(a.image().begin(), a.image().end(), b.image().begin(),
                                      b.image().end(), term_less);
}

std::vector<Trigger> applicable_triggers(const FactBase& f, const RuleSet& rules) {
  std::vector<Trigger> out;
  for (const RulePtr& r : rules) {
    HomSearchSpec spec;
    spec.source = r->body();
    spec.target = &f;
    for (const Substitution& pi : find_homomorphisms(spec)) out.emplace_back(r, pi);
  }
  std::stable_sort(out.begin(), out.end(), TriggerOrder(rules));
  return out;
}

std::vector<Trigger> triggers_touching(const FactBase& f, const RuleSet& rules,
                                       std::span<const Atom> delta, std::size_t limit) {
  std::vector<Trigger> out;
  std::unordered_set<Trigger, TriggerHash> seen;
  for (const RulePtr& r : rules) {
    for (std::size_t i = 0; i < r->body().size(); ++i) {
      const Atom& pattern = r->body()[i];
      for (const Atom& a : delta) {
        if (a.predicate != pattern.predicate || a.args.size() != pattern.args.size()) continue;
        Substitution fixed;
        bool ok = true;
        for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
          Term p = pattern.args[k];
          if (!p.is_variable()) {
            ok = p == a.args[k];
          } else if (auto prev = fixed.lookup(p)) {
            ok = *prev == a.args[k];
          } else {
            fixed.bind(p, a.args[k]);
          }
        }
        if (!ok) continue;
        HomSearchSpec spec;
        spec.source = r->body();
        spec.target = &f;
        spec.fixed = std::move(fixed);
        for_each_homomorphism(spec, [&](const Substitution& pi) {
          Trigger t(r, pi);
          if (seen.insert(t).second) out.push_back(std::move(t));
          return out.size() < limit;
        });
        if (out.size() >= limit) return out;
      }
    }
  }
  return out;
}

FactBase immediate_derivation(const FactBase& f, const Trigger& t, NullNaming naming) {
  for (const Atom& a : t.support()) {
    if (!f.contains(a)) throw SupportNotPresent("support atom " + to_string(a) + " is missing");
  }
  return set_union(f, t.output(naming));
}

}  // namespace kbound
