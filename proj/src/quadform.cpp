#include "k3zd/quadform.hpp"

#include <algorithm>

#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/oracle.hpp"

namespace k3zd {
namespace {

// x_i <- x_i + factor * x_j on both sides of A, and on the columns of T.
void add_multiple(RatMatrix& a, RatMatrix& t, std::size_t i, std::size_t j, const Rat& factor) {
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) a(r, i) += factor * a(r, j);
  for (std::size_t c = 0; c < n; ++c) a(i, c) += factor * a(j, c);
  for (std::size_t r = 0; r < n; ++r) t(r, i) += factor * t(r, j);
}

void swap_indices(RatMatrix& a, RatMatrix& t, std::size_t i, std::size_t j) {
  if (i == j) return;
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
  for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
  for (std::size_t r = 0; r < n; ++r) std::swap(t(r, i), t(r, j));
}

void require_nondegenerate(const QuadraticForm& q) { (void)discriminant(q); }

}  // namespace

QuadraticForm::QuadraticForm(RatMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_square()) throw DomainError("quadratic form: gram matrix is not square");
  if (!gram_.is_symmetric()) throw DomainError("quadratic form: gram matrix is not symmetric");
  if (gram_.rows() < 2 || gram_.rows() > kMaxDimension) {
    throw DomainError("quadratic form: dimension must be between 2 and 16");
  }
}

QuadraticForm QuadraticForm::diagonal(const std::vector<Rat>& coefficients) {
  RatMatrix g(coefficients.size(), coefficients.size());
  for (std::size_t i = 0; i < coefficients.size(); ++i) g(i, i) = coefficients[i];
  return QuadraticForm(std::move(g));
}

Rat QuadraticForm::evaluate(const IntVector& x) const {
  if (x.size() != dimension()) throw DomainError("evaluate: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += gram_(i, j) * x[j];
    s += row * x[i];
  }
  return s;
}

DiagonalForm diagonalize(const QuadraticForm& q) {
  const std::size_t n = q.dimension();
  RatMatrix a = q.gram();
  RatMatrix t = RatMatrix::identity(n);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    for (std::size_t i = k; i < n && pivot == n; ++i)
      if (a(i, i) != 0) pivot = i;
    if (pivot == n) {
      // Zero diagonal: x_i += x_j turns a nonzero a(i, j) into a(i, i) = 2 a(i, j).
      for (std::size_t i = k; i < n && pivot == n; ++i)
        for (std::size_t j = i + 1; j < n && pivot == n; ++j)
          if (a(i, j) != 0) {
            add_multiple(a, t, i, j, Rat(1));
            pivot = i;
          }
      if (pivot == n) break;  // remaining block is zero
    }
    swap_indices(a, t, k, pivot);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j) == 0) continue;
      add_multiple(a, t, j, k, -a(k, j) / a(k, k));
    }
  }

  DiagonalForm d;
  d.transform = std::move(t);
  for (std::size_t i = 0; i < n; ++i) {
    d.coefficients.push_back(a(i, i));
    if (a(i, i) != 0) ++d.rank;
  }
  return d;
}

Signature signature(const QuadraticForm& q) {
  Signature s;
  for (const Rat& c : diagonalize(q).coefficients) {
    if (c > 0) ++s.positive;
    else if (c < 0) ++s.negative;
    else ++s.zero;
  }
  return s;
}

Rat discriminant(const QuadraticForm& q) {
  Rat d = determinant(q.gram());
  if (d == 0) throw DegenerateError("quadratic form is degenerate (det = 0)");
  return d;
}

LocalInvariants local_invariants(const QuadraticForm& q, const Place& place) {
  LocalInvariants inv;
  inv.place = place;
  inv.d_square = is_square_in(discriminant(q), place);
  const auto coeffs = diagonalize(q).coefficients;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = i + 1; j < coeffs.size(); ++j)
      inv.epsilon *= hilbert_symbol(coeffs[i], coeffs[j], place);
  return inv;
}

bool is_isotropic_local(const QuadraticForm& q, const Place& place) {
  require_nondegenerate(q);
  if (place.is_infinite()) {
    const Signature s = signature(q);
    return s.positive >= 1 && s.negative >= 1;
  }
  const std::size_t n = q.dimension();
  if (n >= 5) return true;
  const Rat d = discriminant(q);
  if (n == 2) return is_square_in(-d, place);
  const LocalInvariants inv = local_invariants(q, place);
  if (n == 3) return hilbert_symbol(Rat(-1), -d, place) == inv.epsilon;
  return !inv.d_square || hilbert_symbol(Rat(-1), Rat(-1), place) == inv.epsilon;
}

std::vector<Place> critical_places(const QuadraticForm& q) {
  return critical_places(std::span<const Rat>(diagonalize(q).coefficients));
}

IsotropyVerdict is_isotropic_global(const QuadraticForm& q, const GlobalIsotropyOptions& options) {
  require_nondegenerate(q);
  // Failures come in pairs, so an odd prime is preferred as certificate.
  std::vector<Place> order;
  for (const Place& v : critical_places(q))
    if (!v.is_infinite() && v.p() != 2) order.push_back(v);
  order.push_back(Place::infinity());
  order.push_back(Place::prime(2));
  for (const Place& v : order) {
    if (!is_isotropic_local(q, v)) {
      return Anisotropic{v, local_invariants(q, v)};
    }
  }
  Isotropic iso;
  if (options.witness_height > 0) {
    try {
      iso.witness = find_integer_zero(q, options.witness_height);
    } catch (const BudgetExceeded&) {
      // Witness stays absent; the verdict itself does not depend on it.
    }
  }
  return iso;
}

bool binary_isotropic(const Rat& a, const Rat& b, const Rat& c) {
  if (a == 0 && b == 0 && c == 0) throw DomainError("binary_isotropic: zero form");
  return is_rational_square(b * b - 4 * a * c);
}

}  // namespace k3zd
