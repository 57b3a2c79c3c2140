#pragma once

// Regression battery of the worked example values, and a seeded sweep of
// the Hilbert product formula.

#include <cstdint>
#include <string>
#include <vector>

#include "k3zd/arith.hpp"

namespace k3zd {

struct SelfcheckRow {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

std::vector<SelfcheckRow> regression_battery();

struct ProductFormulaSweep {
  std::size_t pairs = 0;
  std::size_t failures = 0;
  std::vector<std::pair<Rat, Rat>> failing;  // at most the first ten
};

/// `pairs` pairs a, b with numerators in [-bound, bound] \ {0} and
/// denominators in [1, bound], drawn from mt19937_64(seed).
ProductFormulaSweep product_formula_sweep(std::size_t pairs, long bound, std::uint64_t seed);

}  // namespace k3zd
