#include "kbound/skolem.hpp"

#include <algorithm>

namespace kbound {

namespace {

SkolemAtom convert(const Rule& r, const Atom& h) {
  SkolemAtom out{h.predicate, {}};
  for (Term t : h.args) {
    bool existential = std::find(r.existentials().begin(), r.existentials().end(), t) !=
                       r.existentials().end();
    if (existential) {
      out.args.emplace_back(SkolemTerm{"f_" + r.id() + "^" + t.name(), r.frontier()});
    } else {
      out.args.emplace_back(t);
    }
  }
  return out;
}

std::string arg_text(const SkolemArg& a) {
  if (const Term* t = std::get_if<Term>(&a)) return to_string(*t);
  return to_string(std::get<SkolemTerm>(a));
}

}  // namespace

std::vector<SkolemRule> skolemize(const RuleSet& rules) {
  std::vector<SkolemRule> out;
  for (const RulePtr& r : rules) {
    if (r->is_datalog()) {
      SkolemRule s{r->id(), r->body(), {}};
      for (const Atom& h : r->head()) s.head.push_back(convert(*r, h));
      out.push_back(std::move(s));
      continue;
    }
    for (std::size_t i = 0; i < r->head().size(); ++i) {
      std::string id = r->head().size() == 1 ? r->id() : r->id() + "." + std::to_string(i + 1);
      out.push_back(SkolemRule{std::move(id), r->body(), {convert(*r, r->head()[i])}});
    }
  }
  return out;
}

std::string to_string(const SkolemTerm& t) {
  std::string s = t.function + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) s.push_back(',');
    s += to_string(t.args[i]);
  }
  return s + ")";
}

std::string to_string(const SkolemRule& r) {
  std::string s = r.id + ": ";
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) s += ", ";
    s += to_string(r.body[i]);
  }
  s += " -> ";
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) s += ", ";
    s += r.head[i].predicate.name() + "(";
    for (std::size_t k = 0; k < r.head[i].args.size(); ++k) {
      if (k) s.push_back(',');
      s += arg_text(r.head[i].args[k]);
    }
    s += ")";
  }
  return s;
}

}  // namespace kbound
