// One PASS or FAIL line per acceptance criterion, followed by the checks that
// failed. Exits non-zero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#include "criteria.hpp"

int main() {
  const std::vector<std::function<criteria::Result()>> all{
      criteria::variant_semantics,
      criteria::boundedness_goldens,
      [] { return criteria::proposition_properties(400); },
      criteria::negative_examples,
      [] { return criteria::oracle_equivalence(); },
      [] { return criteria::homomorphism_oracle(); },
  };
  bool all_passed = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    criteria::Result r = all[i]();
    std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    bool ok = r.passed();
    all_passed = all_passed && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << i + 1 << " " << r.summary() << " [" << took.count() << " s]" << std::endl;
    for (const criteria::Check& ch : r.checks) {
      if (ch.ok) continue;
      std::cout << "    failed: " << ch.name;
      if (!ch.detail.empty()) std::cout << " (" << ch.detail << ")";
      std::cout << "\n";
    }
  }
  return all_passed ? 0 : 1;
}
