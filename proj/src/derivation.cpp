#include "kbound/derivation.hpp"

#include <algorithm>

#include "kbound/error.hpp"

namespace kbound {

std::size_t Derivation::FrontierKeyHash::operator()(const FrontierKey& k) const noexcept {
  std::size_t h = std::hash<std::string>{}(k.rule);
  for (Term t : k.image) h = (h ^ t.id()) * 0x100000001b3ull + (h >> 31);
  return h;
}

Derivation::Derivation(FactBase initial, std::shared_ptr<const RuleSet> rules, NullNaming naming)
    : rules_(std::move(rules)), naming_(naming), initial_(std::move(initial)), atoms_(initial_) {
  rank_.assign(atoms_.size(), 0);
  producer_.assign(atoms_.size(), -1);
}

std::vector<Trigger> Derivation::triggers() const {
  std::vector<Trigger> v;
  v.reserve(steps_.size());
  for (const Step& s : steps_) v.push_back(s.trigger);
  return v;
}

bool Derivation::frontier_used(const Trigger& t) const {
  return frontier_keys_.count(FrontierKey{t.rule().id(), t.frontier_image()}) != 0;
}

bool Derivation::supports(const Trigger& t) const {
  for (const Atom& a : t.support()) {
    if (!atoms_.contains(a)) return false;
  }
  return true;
}

bool Derivation::is_productive(const Trigger& t) const {
  for (const Atom& a : t.output(naming_)) {
    if (!atoms_.contains(a)) return true;
  }
  return false;
}

std::optional<unsigned> Derivation::rank(const Atom& a) const {
  auto i = atoms_.index_of(a);
  if (!i) return std::nullopt;
  return rank_[*i];
}

unsigned Derivation::rank_of(const Atom& a) const {
  auto r = rank(a);
  if (!r) throw AtomNotInDerivation("atom " + to_string(a) + " is not in the derivation");
  return *r;
}

unsigned Derivation::trigger_rank(const Trigger& t) const {
  unsigned r = 0;
  for (const Atom& a : t.support()) {
    auto ar = rank(a);
    if (!ar) throw SupportNotPresent("support atom " + to_string(a) + " is missing");
    r = std::max(r, *ar);
  }
  return r + 1;
}

std::optional<std::size_t> Derivation::producer(const Atom& a) const {
  auto i = atoms_.index_of(a);
  if (!i) throw AtomNotInDerivation("atom " + to_string(a) + " is not in the derivation");
  if (producer_[*i] < 0) return std::nullopt;
  return static_cast<std::size_t>(producer_[*i]);
}

const Step& Derivation::extend(const Trigger& t) {
  unsigned r = trigger_rank(t);
  if (contains_trigger(t)) throw DuplicateTrigger("trigger " + to_string(t) + " already applied");
  Step step{t, {}, r};
  for (const Atom& a : t.output(naming_)) {
    if (atoms_.insert(a)) {
      rank_.push_back(r);
      producer_.push_back(static_cast<std::int64_t>(steps_.size()));
      step.produced.push_back(a);
      depth_ = std::max(depth_, r);
    }
  }
  applied_.insert(t);
  frontier_keys_.insert(FrontierKey{t.rule().id(), t.frontier_image()});
  steps_.push_back(std::move(step));
  return steps_.back();
}

FactBase Derivation::factbase_at(std::size_t i) const {
  FactBase f = initial_;
  for (std::size_t k = 0; k < i && k < steps_.size(); ++k) {
    for (const Atom& a : steps_[k].produced) f.insert(a);
  }
  return f;
}

Derivation Derivation::prefix(std::size_t n) const {
  Derivation d(initial_, rules_, naming_);
  for (std::size_t k = 0; k < n && k < steps_.size(); ++k) d.extend(steps_[k].trigger);
  return d;
}

ChaseGraph Derivation::chase_graph() const {
  ChaseGraph g;
  g.nodes.assign(atoms_.begin(), atoms_.end());
  g.ranks = rank_;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    std::vector<Atom> support = steps_[k].trigger.support();
    for (const Atom& to : steps_[k].produced) {
      for (const Atom& from : support) g.edges.push_back(ChaseEdge{from, to, k});
    }
  }
  return g;
}

}  // namespace kbound
