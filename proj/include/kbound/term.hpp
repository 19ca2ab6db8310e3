#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kbound {

enum class TermKind : std::uint8_t { Constant = 0, Variable = 1, Null = 2 };

class Term;

/// Where a fresh null comes from: the rule, the existential variable it
/// replaces and the bindings of the trigger that created it (sorted by
/// variable name).
struct NullOrigin {
  std::string rule_id;
  std::string variable;
  std::vector<std::pair<std::string, Term>> bindings;
};

/// Interned term handle. Two handles are equal iff they denote the same term.
/// The built-in comparison orders by interning id and is meant for containers;
/// use term_less for the canonical order.
class Term {
 public:
  Term() = default;

  static Term constant(std::string_view name);
  static Term variable(std::string_view name);
  static Term null(const NullOrigin& origin);

  TermKind kind() const { return static_cast<TermKind>(id_ >> kKindShift); }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_null() const { return kind() == TermKind::Null; }
  /// Variables and fresh nulls share the substitutable sort.
  bool is_substitutable() const { return !is_constant(); }
  bool valid() const { return id_ != kInvalid; }

  const std::string& name() const;
  const NullOrigin& origin() const;
  std::uint32_t id() const { return id_; }

  friend bool operator==(Term, Term) = default;
  friend auto operator<=>(Term, Term) = default;

 private:
  static constexpr unsigned kKindShift = 30;
  static constexpr std::uint32_t kInvalid = 0xffffffffu;

  explicit Term(std::uint32_t id) : id_(id) {}

  std::uint32_t id_ = kInvalid;

  friend class TermPool;
};

/// Constant < Variable < Null; constants and variables by name, nulls by
/// origin.
bool term_less(Term a, Term b);
std::strong_ordering term_compare(Term a, Term b);

std::string to_string(Term t);

/// Interned predicate symbol. Arity lives in a Signature.
class Predicate {
 public:
  Predicate() = default;
  explicit Predicate(std::string_view name);

  const std::string& name() const;
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0xffffffffu; }

  friend bool operator==(Predicate, Predicate) = default;
  friend auto operator<=>(Predicate, Predicate) = default;

 private:
  std::uint32_t id_ = 0xffffffffu;
};

inline bool predicate_less(Predicate a, Predicate b) { return a.name() < b.name(); }

}  // namespace kbound

template <>
struct std::hash<kbound::Term> {
  std::size_t operator()(kbound::Term t) const noexcept {
    return std::hash<std::uint32_t>{}(t.id());
  }
};

template <>
struct std::hash<kbound::Predicate> {
  std::size_t operator()(kbound::Predicate p) const noexcept {
    return std::hash<std::uint32_t>{}(p.id());
  }
};
