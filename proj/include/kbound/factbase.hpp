#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kbound/atom.hpp"

namespace kbound {

/// A finite set of atoms, indexed by predicate and by term. Iteration follows
/// insertion order; use sorted() for the canonical order.
class FactBase {
 public:
  FactBase() = default;
  FactBase(std::initializer_list<Atom> atoms);
  explicit FactBase(std::span<const Atom> atoms);

  /// Returns false when the atom was already present.
  bool insert(const Atom& a);
  bool contains(const Atom& a) const { return index_.count(a) != 0; }
  std::optional<std::size_t> index_of(const Atom& a) const;

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  std::span<const Atom> atoms() const { return atoms_; }
  auto begin() const { return atoms_.begin(); }
  auto end() const { return atoms_.end(); }

  /// Indices of the atoms with the given predicate.
  std::span<const std::uint32_t> with_predicate(Predicate p) const;
  /// Indices of the atoms in which the term occurs.
  std::span<const std::uint32_t> with_term(Term t) const;
  bool mentions(Term t) const { return by_term_.count(t) != 0; }

  std::vector<Atom> sorted() const;
  /// Distinct terms, in canonical order.
  std::vector<Term> terms() const;
  bool subset_of(const FactBase& other) const;

  friend bool operator==(const FactBase& a, const FactBase& b);

 private:
  std::vector<Atom> atoms_;
  std::unordered_map<Atom, std::uint32_t, AtomHash> index_;
  std::unordered_map<Predicate, std::vector<std::uint32_t>> by_predicate_;
  std::unordered_map<Term, std::vector<std::uint32_t>> by_term_;
};

struct TermInventory {
  std::vector<Term> variables;  // variables and nulls
  std::vector<Term> constants;
  std::vector<Term> all;
};

TermInventory term_inventory(const FactBase& f);
TermInventory term_inventory(std::span<const Atom> atoms);

/// "{p(a,b), q(b)}" in canonical order.
std::string to_string(const FactBase& f);
std::string to_string(std::span<const Atom> atoms);

FactBase set_union(const FactBase& a, std::span<const Atom> b);
FactBase set_difference(const FactBase& a, const FactBase& b);

}  // namespace kbound
