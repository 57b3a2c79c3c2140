#include "k3zd/hilbert.hpp"

#include <algorithm>

#include "k3zd/errors.hpp"

namespace k3zd {
namespace {

// Integer in the same square class as x.
Int integral_class(const Rat& x) { return x.get_num() * x.get_den(); }

int sign_power(int base, long exponent) {
  return (base == -1 && exponent % 2 != 0) ? -1 : 1;
}

// (u - 1) / 2 mod 2 for odd u.
long half_unit_parity(const Int& u) {
  return mpz_fdiv_ui(u.get_mpz_t(), 4) == 3 ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rat& a_in, const Rat& b_in, const Place& v) {
  if (a_in == 0 || b_in == 0) throw DomainError("hilbert_symbol: zero argument");
  if (v.is_infinite()) return (a_in < 0 && b_in < 0) ? -1 : 1;

  const Int a = integral_class(a_in);
  const Int b = integral_class(b_in);
  const Int& p = v.p();
  const long alpha = vp(a, p);
  const long beta = vp(b, p);
  const Int a1 = strip_prime(a, p);
  const Int b1 = strip_prime(b, p);

  if (p == 2) {
    int s = sign_power(-1, half_unit_parity(a1) * half_unit_parity(b1));
    s *= sign_power(mod2symbol(a1), beta);
    s *= sign_power(mod2symbol(b1), alpha);
    return s;
  }
  const long half = mpz_fdiv_ui(Int((p - 1) / 2).get_mpz_t(), 2);
  int s = sign_power(-1, (alpha * beta % 2) * half);
  s *= sign_power(legendre(a1, p), beta);
  s *= sign_power(legendre(b1, p), alpha);
  return s;
}

IdentityCheck symbol_identities_check(const Rat& a, const Rat& b, const Rat& c, const Place& v) {
  auto h = [&](const Rat& x, const Rat& y) { return hilbert_symbol(x, y, v); };
  IdentityCheck out;
  auto expect = [&](bool ok, const char* what) {
    if (!ok && out.passed) {
      out.passed = false;
      out.first_violation = what;
    }
  };
  expect(h(a, b) == h(b, a), "(a,b) = (b,a)");
  expect(h(a, c * c) == 1, "(a,c^2) = 1");
  expect(h(a, -a) == 1, "(a,-a) = 1");
  if (a != 1) expect(h(a, 1 - a) == 1, "(a,1-a) = 1");
  expect(h(b, a * c) == h(b, a) * h(b, c), "(b,ac) = (b,a)(b,c)");
  expect(h(a, a) == h(a, -1), "(a,a) = (a,-1)");
  expect(h(a, b * c * c) == h(a, b), "(a,bc^2) = (a,b)");
  return out;
}

std::vector<Place> critical_places(std::span<const Rat> values) {
  std::vector<Place> places{Place::infinity(), Place::prime(2)};
  std::vector<Int> primes;
  for (const Rat& x : values) {
    if (x == 0) continue;
    for (const Int* part : {&x.get_num(), &x.get_den()}) {
      for (const Int& p : odd_prime_divisors(*part)) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const Int& p : primes) places.push_back(Place::prime(p));
  return places;
}

ProductFormulaReport product_formula_check(const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw DomainError("product_formula_check: zero argument");
  ProductFormulaReport report;
  const Rat values[] = {a, b};
  for (const Place& v : critical_places(values)) {
    int s = hilbert_symbol(a, b, v);
    report.table.push_back({v, s});
    report.product *= s;
  }
  return report;
}

}  // namespace k3zd
