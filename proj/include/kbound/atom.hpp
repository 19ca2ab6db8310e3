#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kbound/term.hpp"

namespace kbound {

struct Atom {
  Predicate predicate;
  std::vector<Term> args;

  Atom() = default;
  Atom(Predicate p, std::vector<Term> a) : predicate(p), args(std::move(a)) {}

  std::size_t arity() const { return args.size(); }

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const noexcept {
    std::size_t h = a.predicate.id() * 0x9e3779b97f4a7c15ull;
    for (Term t : a.args) h = (h ^ t.id()) * 0x100000001b3ull + (h >> 29);
    return h;
  }
};

/// Canonical order: predicate name, then arguments under term_less.
bool atom_less(const Atom& a, const Atom& b);

std::string to_string(const Atom& a);

/// Predicate arities and known constants.
class Signature {
 public:
  /// Throws ArityConflict when the predicate is already declared differently.
  void declare(std::string_view predicate, std::size_t arity);
  void add_constant(Term c);

  std::optional<std::size_t> arity(Predicate p) const;
  bool contains(Predicate p) const { return arity(p).has_value(); }
  /// Sorted by predicate name.
  const std::map<std::string, std::size_t>& predicates() const { return arities_; }
  const std::set<std::string>& constants() const { return constants_; }
  std::size_t max_arity() const;

  /// Adds every declaration of other; throws ArityConflict on disagreement.
  void merge(const Signature& other);

 private:
  std::map<std::string, std::size_t> arities_;
  std::set<std::string> constants_;
};

/// Throws UnknownPredicate or ArityMismatch.
Atom make_atom(std::string_view predicate, std::vector<Term> args, const Signature& signature);

/// Builds an atom without a signature check.
Atom atom(std::string_view predicate, std::vector<Term> args);

}  // namespace kbound
