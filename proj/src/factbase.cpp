#include "kbound/factbase.hpp"

#include <algorithm>
#include <unordered_set>

namespace kbound {

FactBase::FactBase(std::initializer_list<Atom> atoms) {
  for (const Atom& a : atoms) insert(a);
}

FactBase::FactBase(std::span<const Atom> atoms) {
  for (const Atom& a : atoms) insert(a);
}

bool FactBase::insert(const Atom& a) {
  auto id = static_cast<std::uint32_t>(atoms_.size());
  auto [it, inserted] = index_.emplace(a, id);
  if (!inserted) return false;
  atoms_.push_back(a);
  by_predicate_[a.predicate].push_back(id);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j) seen = seen || a.args[j] == a.args[i];
    if (!seen) by_term_[a.args[i]].push_back(id);
  }
  return true;
}

std::optional<std::size_t> FactBase::index_of(const Atom& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const std::uint32_t> FactBase::with_predicate(Predicate p) const {
  auto it = by_predicate_.find(p);
  if (it == by_predicate_.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> FactBase::with_term(Term t) const {
  auto it = by_term_.find(t);
  if (it == by_term_.end()) return {};
  return it->second;
}

std::vector<Atom> FactBase::sorted() const {
  std::vector<Atom> v = atoms_;
  std::sort(v.begin(), v.end(), atom_less);
  return v;
}

std::vector<Term> FactBase::terms() const {
  std::vector<Term> v;
  v.reserve(by_term_.size());
  for (const auto& [t, _] : by_term_) v.push_back(t);
  std::sort(v.begin(), v.end(), term_less);
  return v;
}

bool FactBase::subset_of(const FactBase& other) const {
  if (size() > other.size()) return false;
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [&](const Atom& a) { return other.contains(a); });
}

bool operator==(const FactBase& a, const FactBase& b) {
  return a.size() == b.size() && a.subset_of(b);
}

TermInventory term_inventory(std::span<const Atom> atoms) {
  std::unordered_set<Term> seen;
  TermInventory inv;
  for (const Atom& a : atoms) {
    for (Term t : a.args) {
      if (!seen.insert(t).second) continue;
      inv.all.push_back(t);
      (t.is_constant() ? inv.constants : inv.variables).push_back(t);
    }
  }
  std::sort(inv.all.begin(), inv.all.end(), term_less);
  std::sort(inv.constants.begin(), inv.constants.end(), term_less);
  std::sort(inv.variables.begin(), inv.variables.end(), term_less);
  return inv;
}

TermInventory term_inventory(const FactBase& f) { return term_inventory(f.atoms()); }

std::string to_string(std::span<const Atom> atoms) {
  std::vector<Atom> v(atoms.begin(), atoms.end());
  std::sort(v.begin(), v.end(), atom_less);
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  s += "}";
  return s;
}

std::string to_string(const FactBase& f) { return to_string(f.atoms()); }

FactBase set_union(const FactBase& a, std::span<const Atom> b) {
  FactBase r = a;
  for (const Atom& x : b) r.insert(x);
  return r;
}

FactBase set_difference(const FactBase& a, const FactBase& b) {
  FactBase r;
  for (const Atom& x : a) {
    if (!b.contains(x)) r.insert(x);
  }
  return r;
}

}  // namespace kbound
