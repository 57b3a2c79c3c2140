#pragma once

// Brute-force verification independent of the invariant engine: integer zero
// search, p-adic solubility search, and the cross-check harness.

#include <optional>
#include <string>
#include <vector>

#include "k3zd/matrix.hpp"
#include "k3zd/quadform.hpp"

namespace k3zd {

/// Smallest primitive zero of q with max-norm <= height, or nullopt.
///
/// Order: increasing max-norm, then lexicographic where each coordinate is
/// ranked 0, 1, -1, 2, -2, ...; the returned vector has its first nonzero
/// coordinate positive. The search solves for one coordinate with nonzero
/// diagonal entry and enumerates the others. Throws BudgetExceeded when
/// the enumeration would exceed ~4e10 steps.
std::optional<IntVector> find_integer_zero(const QuadraticForm& q, long height);

/// Same contract as find_integer_zero, by scanning every vector of the box.
/// Reference implementation for small inputs; budget 1e8 vectors.
std::optional<IntVector> find_integer_zero_exhaustive(const QuadraticForm& q, long height);

/// True when `a` precedes `b` in the witness order above.
bool witness_precedes(const IntVector& a, const IntVector& b);

/// 2 * vp(4 * |det|) + 3 for the integral rescaling of q: above this
/// precision every primitive solution mod p^k lifts by Hensel's lemma.
unsigned default_precision(const QuadraticForm& q, const Int& p);

/// Does q (rescaled to integer coefficients) have a primitive zero mod p^k?
///
/// Walks the tree of primitive solutions mod p, p^2, ..., normalized so that
/// the first unit coordinate is 1, and stops early once a node satisfies the
/// Hensel condition j > 2 v_p(grad q). Throws BudgetExceeded after
/// `node_budget` tree nodes.
bool local_solubility_search(const QuadraticForm& q, const Int& p, unsigned k,
                             long node_budget = 2'000'000);

enum class ZeroSearchOutcome { Found, NotFound, Skipped };

struct LocalAgreement {
  Place place;
  bool engine = false;         // is_isotropic_local
  std::optional<bool> search;  // nullopt: budget exceeded
  unsigned precision = 0;

  bool agrees() const { return !search || *search == engine; }
};

struct CrosscheckOptions {
  long zero_height = 500;
  long local_node_budget = 2'000'000;
};

struct CrosscheckReport {
  int case_id = 0;                         // 0 when no canonical shape matched
  std::optional<bool> lemma_anisotropic;   // case condition, when a case matched
  bool lemma_internally_consistent = true;
  IsotropyVerdict engine;
  ZeroSearchOutcome zero_search = ZeroSearchOutcome::Skipped;
  std::optional<IntVector> zero;
  long zero_height = 0;
  std::vector<LocalAgreement> local;
  std::vector<std::string> disagreements;

  bool consistent() const { return disagreements.empty(); }
};

/// Runs the case condition, the invariant engine and the zero search on the
/// Picard form of an admissible gram matrix, plus local searches at every
/// critical prime, and records every pairwise disagreement.
CrosscheckReport crosscheck(const IntMatrix& gram, const CrosscheckOptions& options = {});

}  // namespace k3zd
