#include "k3zd/matrix.hpp"

#include <utility>

namespace k3zd {

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss elimination: every intermediate quotient is exact.
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m) {
  IntMatrix scaled = clear_denominators(m);
  // clear_denominators multiplies every entry by the same L > 0.
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
  Int ln;
  mpz_pow_ui(ln.get_mpz_t(), l.get_mpz_t(), m.rows());
  return make_rat(determinant(scaled), ln);
}

std::vector<Rat> leading_minors(const RatMatrix& m) {
  std::vector<Rat> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    out.push_back(determinant(principal_submatrix(m, idx)));
  }
  return out;
}

RatVector solve(const RatMatrix& a_in, const RatVector& b_in) {
  const std::size_t n = a_in.rows();
  if (!a_in.is_square() || b_in.size() != n) throw DomainError("solve: shape mismatch");
  RatMatrix a = a_in;
  RatVector b = b_in;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0) throw DegenerateError("solve: singular system");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  RatVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

IntMatrix clear_denominators(const RatMatrix& m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  return out;
}

std::string to_string(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ",";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace k3zd
