#include "k3zd/zariski.hpp"

#include <algorithm>

#include "k3zd/errors.hpp"
#include "k3zd/quadform.hpp"

namespace k3zd {

SurfaceLattice::SurfaceLattice(IntMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  if (!gram_.is_square() || gram_.rows() == 0) throw DomainError("lattice: gram matrix must be square and nonempty");
  if (!gram_.is_symmetric()) throw DomainError("lattice: gram matrix is not symmetric");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < gram_.rows(); ++i) labels_.push_back("C" + std::to_string(i + 1));
  }
  if (labels_.size() != gram_.rows()) throw DomainError("lattice: label count does not match rank");
}

Rat SurfaceLattice::intersect(const RatVector& d, std::size_t i) const {
  if (d.size() != rank()) throw DomainError("divisor length does not match rank");
  Rat s = 0;
  for (std::size_t j = 0; j < rank(); ++j) s += d[j] * gram_(j, i);
  return s;
}

bool SurfaceLattice::has_hodge_signature() const {
  if (rank() == 1) return gram_(0, 0) > 0;
  const QuadraticForm q(gram_);
  const Signature s = signature(q);
  return s.zero == 0 && s.positive == 1;
}

bool is_negative_definite(const SurfaceLattice& lattice, const std::vector<std::size_t>& subset) {
  for (std::size_t i : subset)
    if (i >= lattice.rank()) throw DomainError("is_negative_definite: index out of range");
  const RatMatrix sub = to_rat(principal_submatrix(lattice.gram(), subset));
  const std::vector<Rat> minors = leading_minors(sub);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int want = (k % 2 == 0) ? -1 : 1;
    if (sgn(minors[k]) != want) return false;
  }
  return true;
}

bool is_nef(const SurfaceLattice& lattice, const RatVector& d) {
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    if (lattice.intersect(d, i) < 0) return false;
  return true;
}

ZariskiDecomposition zariski_decompose(const SurfaceLattice& lattice, const IntVector& d_int) {
  const std::size_t n = lattice.rank();
  if (d_int.size() != n) throw DomainError("zariski_decompose: divisor length does not match rank");
  for (const Int& c : d_int)
    if (c < 0) throw NotEffectiveError("zariski_decompose: divisor has a negative coefficient");

  RatVector d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = d_int[i];

  ZariskiDecomposition z;
  z.positive = d;
  z.negative.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    if (lattice.intersect(d, i) < 0) z.support.push_back(i);

  while (!z.support.empty()) {
    ++z.iterations;
    if (z.iterations > n) throw InternalInconsistency("zariski_decompose: iteration did not stabilize");
    if (!is_negative_definite(lattice, z.support)) {
      throw InternalInconsistency("zariski_decompose: support is not negative definite");
    }
    const std::size_t s = z.support.size();
    RatMatrix system(s, s);
    RatVector rhs(s);
    for (std::size_t r = 0; r < s; ++r) {
      rhs[r] = lattice.intersect(d, z.support[r]);
      for (std::size_t c = 0; c < s; ++c) system(r, c) = lattice.gram()(z.support[c], z.support[r]);
    }
    const RatVector coeffs = solve(system, rhs);
    z.negative.assign(n, Rat(0));
    for (std::size_t r = 0; r < s; ++r) {
      if (coeffs[r] < 0) throw InternalInconsistency("zariski_decompose: negative part has a negative coefficient");
      z.negative[z.support[r]] = coeffs[r];
    }
    for (std::size_t i = 0; i < n; ++i) z.positive[i] = d[i] - z.negative[i];

    std::vector<std::size_t> grown = z.support;
    for (std::size_t i = 0; i < n; ++i)
      if (lattice.intersect(z.positive, i) < 0 &&
          std::find(grown.begin(), grown.end(), i) == grown.end())
        grown.push_back(i);
    if (grown.size() == z.support.size()) break;
    std::sort(grown.begin(), grown.end());
    z.support = std::move(grown);
  }

  // Drop support entries whose coefficient came out zero.
  std::erase_if(z.support, [&](std::size_t i) { return z.negative[i] == 0; });
  for (std::size_t i = 0; i < n; ++i) {
    z.denominator = lcm(z.denominator, z.negative[i].get_den());
    z.denominator = lcm(z.denominator, z.positive[i].get_den());
  }
  return z;
}

Int zariski_denominator(const SurfaceLattice& lattice, const IntVector& d) {
  return zariski_decompose(lattice, d).denominator;
}

NumThmReport check_numthm(const SurfaceLattice& lattice) {
  NumThmReport r;
  const IntMatrix& g = lattice.gram();
  const auto& name = lattice.labels();
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    if (g(i, i) >= 0) continue;
    for (std::size_t j = 0; j < lattice.rank(); ++j) {
      if (!mpz_divisible_p(g(i, j).get_mpz_t(), g(i, i).get_mpz_t())) {
        r.cond_a = false;
        r.violations.push_back("(a) " + name[i] + "^2 = " + g(i, i).get_str() + " does not divide " +
                               name[i] + "." + name[j] + " = " + g(i, j).get_str());
      }
    }
  }
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    for (std::size_t j = i + 1; j < lattice.rank(); ++j) {
      if (g(i, j) != 0 && is_negative_definite(lattice, {i, j})) {
        r.cond_b = false;
        r.violations.push_back("(b) " + name[i] + ", " + name[j] +
                               " span a negative definite pair but meet in " + g(i, j).get_str());
      }
    }
  return r;
}

Int max_denominator_bounded(const SurfaceLattice& lattice, long height) {
  if (height < 0) throw DomainError("max_denominator_bounded: height must be >= 0");
  const std::size_t n = lattice.rank();
  Int best = 1;
  IntVector d(n, Int(0));
  for (;;) {
    best = std::max(best, zariski_denominator(lattice, d));
    std::size_t i = 0;
    while (i < n && d[i] == height) d[i++] = 0;
    if (i == n) break;
    ++d[i];
  }
  return best;
}

}  // namespace k3zd
