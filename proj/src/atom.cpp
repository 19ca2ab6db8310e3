#include "kbound/atom.hpp"

#include <algorithm>

#include "kbound/error.hpp"

namespace kbound {

bool atom_less(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate) return a.predicate.name() < b.predicate.name();
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(),
                                      term_less);
}

std::string to_string(const Atom& a) {
  std::string s = a.predicate.name();
  s.push_back('(');
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s.push_back(',');
    s += to_string(a.args[i]);
  }
  s.push_back(')');
  return s;
}

void Signature::declare(std::string_view predicate, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(std::string(predicate), arity);
  if (!inserted && it->second != arity) {
    throw ArityConflict("predicate " + std::string(predicate) + " used with arity " +
                        std::to_string(arity) + " and " + std::to_string(it->second));
  }
}

void Signature::add_constant(Term c) {
  if (c.is_constant()) constants_.insert(c.name());
}

std::optional<std::size_t> Signature::arity(Predicate p) const {
  auto it = arities_.find(p.name());
  if (it == arities_.end()) return std::nullopt;
  return it->second;
}

std::size_t Signature::max_arity() const {
  std::size_t m = 0;
  for (const auto& [_, a] : arities_) m = std::max(m, a);
  return m;
}

void Signature::merge(const Signature& other) {
  for (const auto& [p, a] : other.arities_) declare(p, a);
  constants_.insert(other.constants_.begin(), other.constants_.end());
}

Atom make_atom(std::string_view predicate, std::vector<Term> args, const Signature& signature) {
  Predicate p(predicate);
  auto ar = signature.arity(p);
  if (!ar) throw UnknownPredicate("unknown predicate " + std::string(predicate));
  if (*ar != args.size()) {
    throw ArityMismatch("predicate " + std::string(predicate) + " expects " +
                        std::to_string(*ar) + " arguments, got " + std::to_string(args.size()));
  }
  return Atom(p, std::move(args));
}

Atom atom(std::string_view predicate, std::vector<Term> args) {
  return Atom(Predicate(predicate), std::move(args));
}

}  // namespace kbound
