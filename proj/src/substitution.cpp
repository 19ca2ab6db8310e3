#include "kbound/substitution.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace kbound {

Substitution::Substitution(std::initializer_list<std::pair<Term, Term>> bindings) {
  for (const auto& [from, to] : bindings) bind(from, to);
}

void Substitution::bind(Term from, Term to) {
  if (from.is_constant()) {
    throw std::invalid_argument("cannot substitute constant " + from.name());
  }
  map_[from] = to;
}

std::optional<Term> Substitution::lookup(Term t) const {
  auto it = map_.find(t);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

Term Substitution::apply(Term t) const {
  auto it = map_.find(t);
  return it == map_.end() ? t : it->second;
}

Atom Substitution::apply(const Atom& a) const {
  std::vector<Term> args;
  args.reserve(a.args.size());
  for (Term t : a.args) args.push_back(apply(t));
  return Atom(a.predicate, std::move(args));
}

std::vector<std::pair<Term, Term>> Substitution::sorted_bindings() const {
  std::vector<std::pair<Term, Term>> v(map_.begin(), map_.end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return term_less(x.first, y.first); });
  return v;
}

bool Substitution::is_identity_on(std::span<const Term> terms) const {
  return std::all_of(terms.begin(), terms.end(), [&](Term t) { return apply(t) == t; });
}

std::vector<Atom> apply_substitution(const Substitution& s, std::span<const Atom> atoms) {
  std::vector<Atom> out;
  std::unordered_set<Atom, AtomHash> seen;
  for (const Atom& a : atoms) {
    Atom b = s.apply(a);
    if (seen.insert(b).second) out.push_back(std::move(b));
  }
  return out;
}

FactBase apply_substitution(const Substitution& s, const FactBase& f) {
  FactBase out;
  for (const Atom& a : f) out.insert(s.apply(a));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution r;
  for (const auto& [from, to] : first.bindings()) r.bind(from, second.apply(to));
  for (const auto& [from, to] : second.bindings()) {
    if (!first.binds(from)) r.bind(from, to);
  }
  return r;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [from, to] : s.sorted_bindings()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(from) + "->" + to_string(to);
  }
  return out + "}";
}

bool substitution_less(const Substitution& a, const Substitution& b) {
  auto x = a.sorted_bindings();
  auto y = b.sorted_bindings();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = term_compare(x[i].first, y[i].first); c != 0) return c < 0;
    if (auto c = term_compare(x[i].second, y[i].second); c != 0) return c < 0;
  }
  return x.size() < y.size();
}

}  // namespace kbound
