#pragma once

// Local Hilbert symbols over Q and the product formula.

#include <span>
#include <string>
#include <vector>

#include "k3zd/arith.hpp"

namespace k3zd {

/// (a, b)_v: +1 iff a x^2 + b y^2 = z^2 has a nontrivial solution in Q_v.
/// a, b nonzero rationals; reduced to integers of the same square class.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

struct IdentityCheck {
  bool passed = true;
  std::string first_violation;  // empty when passed
};

/// Evaluates the standard symbol identities (symmetry, (a,c^2)=1, (a,-a)=1,
/// (a,1-a)=1, bilinearity, (a,a)=(a,-1), (a,bc^2)=(a,b)) at one place.
IdentityCheck symbol_identities_check(const Rat& a, const Rat& b, const Rat& c, const Place& v);

struct PlaceSymbol {
  Place place;
  int symbol;
};

struct ProductFormulaReport {
  std::vector<PlaceSymbol> table;  // every place where the symbol may be -1
  int product = 1;

  bool holds() const { return product == 1; }
};

/// Places where a symbol built from these values can be -1:
/// infinity, 2, and odd primes dividing some numerator or denominator.
std::vector<Place> critical_places(std::span<const Rat> values);

ProductFormulaReport product_formula_check(const Rat& a, const Rat& b);

}  // namespace k3zd
