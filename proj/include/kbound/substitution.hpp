#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kbound/atom.hpp"
#include "kbound/factbase.hpp"

namespace kbound {

/// Finite map from variables or nulls to terms. Constants are never in the
/// domain and are left unchanged by apply.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Term, Term>> bindings);

  /// Throws std::invalid_argument when from is a constant.
  void bind(Term from, Term to);
  std::optional<Term> lookup(Term t) const;
  bool binds(Term t) const { return map_.count(t) != 0; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  Term apply(Term t) const;
  Atom apply(const Atom& a) const;

  /// Bindings ordered by id; sorted_bindings() gives canonical order.
  const std::map<Term, Term>& bindings() const { return map_; }
  std::vector<std::pair<Term, Term>> sorted_bindings() const;

  /// Identity on every term of terms.
  bool is_identity_on(std::span<const Term> terms) const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Term, Term> map_;
};

/// Images of the atoms with duplicates removed, first occurrence kept.
std::vector<Atom> apply_substitution(const Substitution& s, std::span<const Atom> atoms);
FactBase apply_substitution(const Substitution& s, const FactBase& f);

/// The substitution that applies first, then second.
Substitution compose(const Substitution& first, const Substitution& second);

/// "{X->a, Y->b}" in canonical order of the domain.
std::string to_string(const Substitution& s);

/// Lexicographic comparison of the images of the domains, in canonical
/// domain order.
bool substitution_less(const Substitution& a, const Substitution& b);

}  // namespace kbound
