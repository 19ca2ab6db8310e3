#pragma once

#include <string>
#include <unordered_map>

#include "kbound/factbase.hpp"

namespace kbound {

struct CanonicalLabeling {
  /// Equal for two factbases iff they are quasi-isomorphic.
  std::string form;
  /// The factbase renamed to constants c0, c1, ... and variables V0, V1, ...
  FactBase representative;
  /// Original term to its canonical name.
  std::unordered_map<Term, Term> renaming;
};

/// Canonical labeling up to a bijective renaming of constants to constants and
/// of variables (and nulls) to variables. Predicates are never renamed.
CanonicalLabeling canonical_labeling(const FactBase& f);

std::string canonical_form(const FactBase& f);

}  // namespace kbound
