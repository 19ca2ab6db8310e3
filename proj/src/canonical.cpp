#include "kbound/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kbound {

namespace {

struct Encoded {
  int predicate;
  std::vector<int> args;
};

// Individualization-refinement search for the lexicographically least
// serialization over all kind-preserving relabelings.
class Labeler {
 public:
  explicit Labeler(const FactBase& f) {
    std::vector<Predicate> preds;
    for (const Atom& a : f) preds.push_back(a.predicate);
    std::sort(preds.begin(), preds.end(), predicate_less);
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    std::unordered_map<Term, int> index;
    for (const Atom& a : f) {
      Encoded e;
      e.predicate = static_cast<int>(
          std::lower_bound(preds.begin(), preds.end(), a.predicate, predicate_less) - preds.begin());
      for (Term t : a.args) {
        auto [it, inserted] = index.emplace(t, static_cast<int>(terms.size()));
        if (inserted) terms.push_back(t);
        e.args.push_back(it->second);
      }
      atoms_.push_back(std::move(e));
    }
    occurrences_.resize(terms.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      for (std::size_t k = 0; k < atoms_[i].args.size(); ++k) {
        occurrences_[atoms_[i].args[k]].push_back({static_cast<int>(i), static_cast<int>(k)});
      }
    }
    predicates = std::move(preds);
  }

  void run() {
    std::vector<int> color(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) color[i] = terms[i].is_constant() ? 0 : 1;
    normalize(color);
    std::vector<int> fixed;
    search(color, fixed);
  }

  std::vector<Term> terms;
  std::vector<Predicate> predicates;
  std::vector<int> best_labels;
  std::vector<int> best_serial;

  std::vector<std::vector<int>> sorted_atoms(const std::vector<int>& labels) const {
    std::vector<std::vector<int>> rows;
    rows.reserve(atoms_.size());
    for (const Encoded& e : atoms_) {
      std::vector<int> row{e.predicate};
      for (int a : e.args) row.push_back(labels[a]);
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  }

 private:
  static void normalize(std::vector<int>& color) {
    std::vector<int> values = color;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (int& c : color) c = static_cast<int>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
  }

  static int count_colors(const std::vector<int>& color) {
    int m = -1;
    for (int c : color) m = std::max(m, c);
    return m + 1;
  }

  void refine(std::vector<int>& color) const {
    int n_colors = count_colors(color);
    while (true) {
      std::vector<std::vector<int>> keys(terms.size());
      for (std::size_t t = 0; t < terms.size(); ++t) {
        std::vector<std::vector<int>> sig;
        for (auto [ai, pos] : occurrences_[t]) {
          const Encoded& e = atoms_[ai];
          std::vector<int> s{e.predicate, pos};
          for (int a : e.args) s.push_back(color[a]);
          sig.push_back(std::move(s));
        }
        std::sort(sig.begin(), sig.end());
        std::vector<int>& key = keys[t];
        key.push_back(color[t]);
        for (const auto& s : sig) {
          key.push_back(static_cast<int>(s.size()));
          key.insert(key.end(), s.begin(), s.end());
        }
      }
      std::vector<std::vector<int>> distinct = keys;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (std::size_t t = 0; t < terms.size(); ++t) {
        color[t] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[t]) -
                                    distinct.begin());
      }
      int m = static_cast<int>(distinct.size());
      if (m == n_colors) return;
      n_colors = m;
    }
  }

  std::vector<int> serialize(const std::vector<int>& labels) const {
    std::vector<int> out;
    for (const auto& row : sorted_atoms(labels)) out.insert(out.end(), row.begin(), row.end());
    return out;
  }

  void leaf(const std::vector<int>& labels) {
    std::vector<int> serial = serialize(labels);
    if (best_labels.empty() || serial < best_serial) {
      best_serial = std::move(serial);
      best_labels = labels;
      return;
    }
    if (serial == best_serial) {
      std::vector<int> by_label(labels.size());
      for (std::size_t t = 0; t < best_labels.size(); ++t) by_label[best_labels[t]] = static_cast<int>(t);
      std::vector<int> perm(labels.size());
      for (std::size_t t = 0; t < labels.size(); ++t) perm[t] = by_label[labels[t]];
      automorphisms_.push_back(std::move(perm));
    }
  }

  static int find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  void search(std::vector<int> color, std::vector<int>& fixed) {
    refine(color);
    int n_colors = count_colors(color);
    if (n_colors == static_cast<int>(terms.size())) {
      leaf(color);
      return;
    }
    std::vector<int> size(n_colors, 0);
    for (int c : color) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;
    std::vector<int> cell;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (color[t] == target) cell.push_back(static_cast<int>(t));
    }
    std::vector<int> explored;
    for (int v : cell) {
      if (!explored.empty() && in_explored_orbit(v, explored, fixed)) continue;
      std::vector<int> child(color.size());
      for (std::size_t t = 0; t < color.size(); ++t) {
        child[t] = 2 * color[t] + (color[t] == target && static_cast<int>(t) != v ? 1 : 0);
      }
      normalize(child);
      fixed.push_back(v);
      search(std::move(child), fixed);
      fixed.pop_back();
      explored.push_back(v);
    }
  }

  bool in_explored_orbit(int v, const std::vector<int>& explored, const std::vector<int>& fixed) const {
    std::vector<int> parent(terms.size());
    std::iota(parent.begin(), parent.end(), 0);
    bool any = false;
    for (const auto& perm : automorphisms_) {
      bool stabilizes = std::all_of(fixed.begin(), fixed.end(), [&](int x) { return perm[x] == x; });
      if (!stabilizes) continue;
      any = true;
      for (std::size_t t = 0; t < perm.size(); ++t) {
        int a = find(parent, static_cast<int>(t));
        int b = find(parent, perm[t]);
        if (a != b) parent[a] = b;
      }
    }
    if (!any) return false;
    int rv = find(parent, v);
    return std::any_of(explored.begin(), explored.end(), [&](int u) { return find(parent, u) == rv; });
  }

  std::vector<Encoded> atoms_;
  std::vector<std::vector<std::pair<int, int>>> occurrences_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const FactBase& f) {
  CanonicalLabeling out;
  if (f.empty()) return out;
  Labeler labeler(f);
  labeler.run();
  const auto& labels = labeler.best_labels;
  int n_constants = 0;
  for (Term t : labeler.terms) n_constants += t.is_constant() ? 1 : 0;
  std::vector<Term> named(labels.size());
  std::vector<std::string> text(labels.size());
  for (std::size_t t = 0; t < labels.size(); ++t) {
    int l = labels[t];
    if (l < n_constants) {
      named[l] = Term::constant("c" + std::to_string(l));
      text[l] = "c" + std::to_string(l);
    } else {
      named[l] = Term::variable("V" + std::to_string(l - n_constants));
      text[l] = "v" + std::to_string(l - n_constants);
    }
    out.renaming.emplace(labeler.terms[t], named[l]);
  }
  bool first = true;
  for (const auto& row : labeler.sorted_atoms(labels)) {
    Predicate p = labeler.predicates[row[0]];
    std::vector<Term> args;
    if (!first) out.form.push_back(';');
    first = false;
    out.form += p.name();
    out.form.push_back('(');
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (k > 1) out.form.push_back(',');
      out.form += text[row[k]];
      args.push_back(named[row[k]]);
    }
    out.form.push_back(')');
    out.representative.insert(Atom(p, std::move(args)));
  }
  return out;
}

std::string canonical_form(const FactBase& f) { return canonical_labeling(f).form; }

}  // namespace kbound
