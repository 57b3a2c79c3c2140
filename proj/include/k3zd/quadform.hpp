#pragma once

// Rational quadratic forms q(x) = x^T G x: diagonalization, signature,
// discriminant, local invariants and local/global isotropy.

#include <optional>
#include <variant>
#include <vector>

#include "k3zd/arith.hpp"
#include "k3zd/matrix.hpp"

namespace k3zd {

class QuadraticForm {
 public:
  static constexpr std::size_t kMaxDimension = 16;

  /// gram must be square, symmetric, of dimension 2..16.
  explicit QuadraticForm(RatMatrix gram);
  explicit QuadraticForm(const IntMatrix& gram) : QuadraticForm(to_rat(gram)) {}
  static QuadraticForm diagonal(const std::vector<Rat>& coefficients);

  std::size_t dimension() const { return gram_.rows(); }
  const RatMatrix& gram() const { return gram_; }

  Rat evaluate(const IntVector& x) const;

 private:
  RatMatrix gram_;
};

/// T^T G T = diag(coefficients), det T != 0.
struct DiagonalForm {
  std::vector<Rat> coefficients;
  RatMatrix transform;
  std::size_t rank = 0;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// d_square: the discriminant is a square at `place`. epsilon: the Hasse
/// invariant, product over i < j of (c_i, c_j) for a diagonalization.
struct LocalInvariants {
  Place place = Place::infinity();
  bool d_square = false;
  int epsilon = 1;
};

struct Isotropic {
  std::optional<IntVector> witness;  // primitive, q(witness) = 0
};

struct Anisotropic {
  Place place;                 // certificate: smallest odd prime, else inf, else 2
  LocalInvariants invariants;  // invariants at that place
};

using IsotropyVerdict = std::variant<Isotropic, Anisotropic>;

inline bool is_anisotropic(const IsotropyVerdict& v) {
  return std::holds_alternative<Anisotropic>(v);
}

/// Congruence diagonalization by symmetric pivoting.
DiagonalForm diagonalize(const QuadraticForm& q);

Signature signature(const QuadraticForm& q);

/// det(gram). Throws DegenerateError when zero.
Rat discriminant(const QuadraticForm& q);

LocalInvariants local_invariants(const QuadraticForm& q, const Place& place);

bool is_isotropic_local(const QuadraticForm& q, const Place& place);

/// {inf, 2} and the odd primes dividing a diagonal coefficient, increasing.
std::vector<Place> critical_places(const QuadraticForm& q);

struct GlobalIsotropyOptions {
  /// Height budget for the integer witness search; 0 disables the search.
  long witness_height = 500;
};

/// Hasse-Minkowski over the critical places.
IsotropyVerdict is_isotropic_global(const QuadraticForm& q, const GlobalIsotropyOptions& options = {});

/// a x^2 + b xy + c y^2 represents 0 nontrivially iff b^2 - 4ac is a square.
bool binary_isotropic(const Rat& a, const Rat& b, const Rat& c);

}  // namespace k3zd
