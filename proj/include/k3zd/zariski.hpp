#pragma once

// Zariski decompositions on a surface whose effective cone is modeled by a
// finite set of curves with a known intersection matrix.
//
// Modeling assumption: pseudoeffective means a nonnegative combination of
// the supplied curves, and nef means nonnegative against each of them.

#include <string>
#include <vector>

#include "k3zd/matrix.hpp"

namespace k3zd {

class SurfaceLattice {
 public:
  /// gram(i, j) = C_i . C_j; must be square and symmetric. Labels default
  /// to C1, C2, ...
  explicit SurfaceLattice(IntMatrix gram, std::vector<std::string> labels = {});

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// D . C_i for a rational combination D of the basis curves.
  Rat intersect(const RatVector& d, std::size_t i) const;

  /// True iff the intersection form has signature (1, rank - 1).
  bool has_hodge_signature() const;

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

/// D = P + N with P nef against every curve, N >= 0 supported on a set with
/// negative definite intersection matrix, and P . C_j = 0 on that support.
struct ZariskiDecomposition {
  RatVector positive;
  RatVector negative;
  std::vector<std::size_t> support;
  Int denominator = 1;  // lcm of the denominators of P and N
  std::size_t iterations = 0;
};

/// Leading principal minors of the sub-Gram alternate in sign starting
/// negative. The empty subset counts as negative definite.
bool is_negative_definite(const SurfaceLattice& lattice, const std::vector<std::size_t>& subset);

bool is_nef(const SurfaceLattice& lattice, const RatVector& d);

/// Fujita's iteration: grow the support by every curve meeting P negatively,
/// re-solving (D - N) . C_i = 0 on the support each time.
/// Throws NotEffectiveError on a negative coefficient and
/// InternalInconsistency if the support stops being negative definite or a
/// coefficient of N comes out negative.
ZariskiDecomposition zariski_decompose(const SurfaceLattice& lattice, const IntVector& d);

Int zariski_denominator(const SurfaceLattice& lattice, const IntVector& d);

struct NumThmReport {
  bool cond_a = true;  // C^2 | C.D for each negative curve C and each curve D
  bool cond_b = true;  // negative definite pairs are orthogonal
  std::vector<std::string> violations;
};

/// Divisibility and orthogonality conditions, evaluated on the modeled curves.
NumThmReport check_numthm(const SurfaceLattice& lattice);

/// Largest Zariski denominator over all D with 0 <= coefficients <= height.
Int max_denominator_bounded(const SurfaceLattice& lattice, long height);

}  // namespace k3zd
