#include "kbound/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "kbound/error.hpp"

namespace kbound {

namespace {

void collect_nulls(Term t, std::set<Term>& seen, std::vector<Term>& order) {
  if (!t.is_null() || seen.count(t)) return;
  seen.insert(t);
  for (const auto& [var, value] : t.origin().bindings) collect_nulls(value, seen, order);
  order.push_back(t);
}

// Nulls of the atoms, each listed after the nulls its bindings mention.
Json nulls_table(const std::vector<const FactBase*>& sources) {
  std::set<Term> seen;
  std::vector<Term> order;
  for (const FactBase* f : sources) {
    for (const Atom& a : *f) {
      for (Term t : a.args) collect_nulls(t, seen, order);
    }
  }
  Json table = Json::array();
  for (Term t : order) {
    const NullOrigin& o = t.origin();
    Json bindings = Json::object();
    for (const auto& [var, value] : o.bindings) bindings[var] = term_to_json(value);
    table.push_back({{"name", "?" + t.name()}, {"rule", o.rule_id}, {"variable", o.variable},
                     {"bindings", bindings}});
  }
  return table;
}

Json atoms_json(std::span<const Atom> atoms) {
  Json out = Json::array();
  for (const Atom& a : atoms) out.push_back(atom_to_json(a));
  return out;
}

Json steps_json(const Derivation& d) {
  Json out = Json::array();
  for (const Step& s : d.steps()) {
    Json sub = Json::object();
    const auto& vars = s.trigger.rule().body_variables();
    for (std::size_t i = 0; i < vars.size(); ++i) sub[vars[i].name()] = term_to_json(s.trigger.image()[i]);
    out.push_back({{"rule", s.trigger.rule().id()},
                   {"substitution", sub},
                   {"produced", atoms_json(s.produced)},
                   {"rank", s.rank}});
  }
  return out;
}

std::string naming_name(NullNaming n) { return n == NullNaming::Trigger ? "trigger" : "frontier"; }

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field ") + name, 0, 0);
  return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw ParseError(std::string("field ") + name + " must be a string", 0, 0);
  return v.get<std::string>();
}

}  // namespace

std::string term_to_json(Term t) {
  if (t.is_constant()) return t.name();
  return "?" + t.name();
}

std::string atom_to_json(const Atom& a) {
  std::string s = a.predicate.name() + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += term_to_json(a.args[i]);
  }
  return s + ")";
}

TermReader::TermReader(const Json& nulls) : nulls_(nulls) {
  if (!nulls_.is_array()) throw ParseError("nulls must be an array", 0, 0);
}

Term TermReader::term(const std::string& text) const {
  if (text.empty()) throw ParseError("empty term", 0, 0);
  if (text[0] != '?') return Term::constant(text);
  // Nulls precede the entries that mention them, so the table is resolved
  // front to back up to the requested name.
  std::map<std::string, Term> resolved;
  for (const Json& entry : nulls_) {
    std::string name = string_field(entry, "name");
    NullOrigin origin;
    origin.rule_id = string_field(entry, "rule");
    origin.variable = string_field(entry, "variable");
    const Json& bindings = field(entry, "bindings");
    if (!bindings.is_object()) throw ParseError("bindings must be an object", 0, 0);
    for (const auto& [var, value] : bindings.items()) {
      if (!value.is_string()) throw ParseError("binding values must be strings", 0, 0);
      std::string v = value.get<std::string>();
      auto it = resolved.find(v);
      Term t = it != resolved.end() ? it->second
               : v[0] == '?'        ? Term::variable(v.substr(1))
                                    : Term::constant(v);
      origin.bindings.emplace_back(var, t);
    }
    std::sort(origin.bindings.begin(), origin.bindings.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Term t = Term::null(origin);
    if (name == text) return t;
    resolved.emplace(name, t);
  }
  return Term::variable(text.substr(1));
}

Atom TermReader::atom(const std::string& text) const {
  std::size_t open = text.find('(');
  if (open == std::string::npos) return Atom(Predicate(text), {});
  if (open == 0 || text.back() != ')') throw ParseError("malformed atom " + text, 0, 0);
  Predicate p(text.substr(0, open));
  std::vector<Term> args;
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  if (!inner.empty()) {
    std::stringstream in(inner);
    std::string part;
    while (std::getline(in, part, ',')) args.push_back(term(part));
  }
  return Atom(p, std::move(args));
}

Json outcome_to_json(const ChaseOutcome& outcome, const VariantPolicy& policy) {
  const Derivation& d = outcome.derivation;
  Json atoms = Json::array();
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    const Atom& a = d.atoms()[i];
    auto producer = d.producer(a);
    atoms.push_back({{"atom", atom_to_json(a)},
                     {"rank", d.rank_at(i)},
                     {"producedBy", producer ? Json(d.steps()[*producer].trigger.rule().id()) : Json()}});
  }
  return Json{{"status", to_string(outcome.status)},
              {"depth", outcome.depth},
              {"variant", to_string(policy.variant)},
              {"breadthFirst", policy.breadth_first},
              {"tieBreak", policy.tie_break == TieBreak::Lex ? "lex" : "fifo"},
              {"naming", naming_name(d.naming())},
              {"initial", atoms_json(d.initial().atoms())},
              {"atoms", atoms},
              {"steps", steps_json(d)},
              {"nulls", nulls_table({&d.atoms()})}};
}

Json verdict_to_json(const BoundednessVerdict& verdict, const BoundednessQuery& query) {
  Json out{{"variant", to_string(query.variant)},
           {"quantifier", to_string(query.quantifier)},
           {"k", query.k},
           {"decidedAs", to_string(verdict.decided_as)},
           {"bounded", verdict.budget_exceeded ? Json() : Json(verdict.bounded)},
           {"budgetExceeded", verdict.budget_exceeded}};
  if (verdict.witness) {
    const Derivation& d = verdict.witness->derivation;
    out["witnessFactbase"] = atoms_json(verdict.witness->factbase.atoms());
    out["witnessDerivation"] = steps_json(d);
    out["naming"] = naming_name(d.naming());
    out["nulls"] = nulls_table({&d.atoms()});
  } else {
    out["witnessFactbase"] = Json();
    out["witnessDerivation"] = Json();
    out["nulls"] = Json::array();
  }
  out["counters"] = {{"factbasesChecked", verdict.factbases_checked},
                     {"derivationsExplored", verdict.derivations_explored}};
  return out;
}

std::string outcome_to_text(const ChaseOutcome& outcome) {
  const Derivation& d = outcome.derivation;
  std::ostringstream out;
  out << "status: " << to_string(outcome.status) << "\n";
  out << "depth: " << outcome.depth << "\n";
  out << "atoms: " << d.atoms().size() << "\n";
  std::map<unsigned, std::vector<std::string>> by_rank;
  for (std::size_t i = 0; i < d.atoms().size(); ++i) by_rank[d.rank_at(i)].push_back(to_string(d.atoms()[i]));
  for (const auto& [rank, atoms] : by_rank) {
    out << "rank " << rank << ":\n";
    for (const std::string& a : atoms) out << "  " << a << "\n";
  }
  return out.str();
}

std::string verdict_to_text(const BoundednessVerdict& verdict, const BoundednessQuery& query) {
  std::ostringstream out;
  out << to_string(query.variant) << " " << to_string(query.quantifier) << " k=" << query.k;
  if (verdict.decided_as != query.variant || query.quantifier == Quantifier::Exists) {
    out << " (decided as " << to_string(verdict.decided_as) << " all)";
  }
  out << ": ";
  if (verdict.budget_exceeded) {
    out << "budget exceeded\n";
  } else {
    out << (verdict.bounded ? "bounded" : "not bounded") << "\n";
  }
  out << "factbases checked: " << verdict.factbases_checked << "\n";
  out << "derivations explored: " << verdict.derivations_explored << "\n";
  if (verdict.witness) {
    out << "witness factbase: " << to_string(verdict.witness->factbase) << "\n";
    out << "witness derivation:\n";
    for (const Step& s : verdict.witness->derivation.steps()) {
      out << "  [" << s.rank << "] " << to_string(s.trigger) << " =>";
      for (const Atom& a : s.produced) out << " " << to_string(a);
      out << "\n";
    }
  }
  return out.str();
}

std::string chase_graph_to_dot(const Derivation& d) {
  ChaseGraph g = d.chase_graph();
  std::unordered_map<Atom, std::size_t, AtomHash> index;
  std::ostringstream out;
  out << "digraph chase {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    index.emplace(g.nodes[i], i);
    out << "  n" << i << " [label=\"" << escape_dot(to_string(g.nodes[i])) << "\\nrank " << g.ranks[i]
        << "\"];\n";
  }
  for (const ChaseEdge& e : g.edges) {
    out << "  n" << index.at(e.from) << " -> n" << index.at(e.to) << " [label=\""
        << escape_dot(d.steps()[e.step].trigger.rule().id()) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

ReplayResult replay(const Json& report, std::shared_ptr<const RuleSet> rules) {
  if (!report.is_object()) throw ParseError("report must be an object", 0, 0);
  VariantPolicy policy;
  if (report.contains("decidedAs")) {
    try {
      policy = policy_for(parse_bounded_variant(string_field(report, "decidedAs")));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0, 0);
    }
  } else {
    try {
      policy.variant = parse_variant(string_field(report, "variant"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0, 0);
    }
    policy.breadth_first = report.value("breadthFirst", false);
  }
  if (report.value("naming", std::string("trigger")) == "frontier") policy.naming = NullNaming::Frontier;

  const Json& initial = report.contains("witnessFactbase") ? report.at("witnessFactbase") : field(report, "initial");
  const Json& steps = report.contains("witnessDerivation") ? report.at("witnessDerivation") : field(report, "steps");
  if (!initial.is_array() || !steps.is_array()) throw ParseError("report has no derivation", 0, 0);
  TermReader reader(report.value("nulls", Json::array()));

  FactBase f;
  for (const Json& a : initial) f.insert(reader.atom(a.get<std::string>()));
  ReplayResult result;
  Derivation d(f, rules, policy.naming);
  result.valid = true;
  result.ranks_match = true;
  std::size_t index = 0;
  for (const Json& step : steps) {
    ++index;
    std::string id = string_field(step, "rule");
    RulePtr rule = rules->find(id);
    if (!rule) throw ParseError("unknown rule " + id, 0, 0);
    Substitution pi;
    for (const auto& [var, value] : field(step, "substitution").items()) {
      pi.bind(Term::variable(var), reader.term(value.get<std::string>()));
    }
    std::optional<Trigger> t;
    try {
      t.emplace(rule, pi);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("step ") + std::to_string(index) + ": " + e.what(), 0, 0);
    }
    if (!d.supports(*t) || d.contains_trigger(*t)) {
      result.valid = false;
      result.ranks_match = false;
      result.message = "step " + std::to_string(index) + " cannot be applied";
      result.derivation = d;
      return result;
    }
    if (!is_applicable(policy.variant, d, *t)) {
      result.valid = false;
      if (result.message.empty()) result.message = "step " + std::to_string(index) + " is not applicable";
    }
    const Step& s = d.extend(*t);
    std::set<Atom> produced(s.produced.begin(), s.produced.end());
    std::set<Atom> recorded;
    for (const Json& a : field(step, "produced")) recorded.insert(reader.atom(a.get<std::string>()));
    if (produced != recorded || s.rank != field(step, "rank").get<unsigned>()) {
      result.ranks_match = false;
      if (result.message.empty()) result.message = "step " + std::to_string(index) + " differs from the report";
    }
  }
  if (policy.breadth_first && result.valid && !is_breadth_first(d, policy.variant, false)) {
    result.valid = false;
    result.message = "derivation is not breadth-first";
  }
  result.derivation = std::move(d);
  return result;
}

}  // namespace kbound
