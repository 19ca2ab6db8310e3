#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "kbound/factbase.hpp"
#include "kbound/substitution.hpp"

namespace kbound {

/// A homomorphism search problem. Constants and frozen terms map to
/// themselves; terms bound in fixed map to their binding; every other
/// variable or null of the source is free.
struct HomSearchSpec {
  std::vector<Atom> source;
  const FactBase* target = nullptr;
  Substitution fixed;
  std::vector<Term> frozen;
  /// Optional veto on mapping source atom i onto a target atom.
  std::function<bool(std::size_t, const Atom&)> filter;
};

/// Calls visit on each homomorphism until it returns false. Each result binds
/// every free term of the source plus the entries of fixed.
void for_each_homomorphism(const HomSearchSpec& spec,
                           const std::function<bool(const Substitution&)>& visit);

/// Without a limit the results are sorted by substitution_less.
std::vector<Substitution> find_homomorphisms(const HomSearchSpec& spec,
                                             std::optional<std::size_t> limit = std::nullopt);

std::optional<Substitution> find_homomorphism(const HomSearchSpec& spec);

/// A homomorphism from `from` to `to` that fixes constants.
bool exists_homomorphism(const FactBase& from, const FactBase& to);
std::optional<Substitution> find_homomorphism(const FactBase& from, const FactBase& to);

/// Is there a substitution that is the identity on the terms of sub and maps
/// big onto sub? Throws NotASubset unless sub is included in big.
bool exists_retraction(const FactBase& big, const FactBase& sub);
std::optional<Substitution> find_retraction(const FactBase& big, const FactBase& sub);

/// A core of f, obtained as a retract of f.
FactBase core_of(const FactBase& f);

}  // namespace kbound
