#include "k3zd/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "k3zd/errors.hpp"

namespace k3zd {
namespace {

constexpr unsigned long kTrialLimit = 1000000;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

void require_prime(const Int& p, const char* where) {
  if (!is_prime(p)) {
    throw DomainError(std::string(where) + ": " + p.get_str() + " is not prime");
  }
}

bool valid_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Brent's variant of Pollard rho with x0 = 2 and increment c. Returns n when
// this c fails to split n.
Int brent_split(const Int& n, unsigned long c) {
  auto f = [&](const Int& x) -> Int {
    Int r = x * x + c;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  Int y = 2, x, ys, g = 1, q = 1;
  unsigned long r = 1;
  constexpr unsigned long m = 128;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Int diff = abs(x - y);
        q = (q * diff) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void split_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Int root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split_into(root, out);
    split_into(root, out);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Int d = brent_split(n, c);
    if (d != n && d != 1) {
      split_into(d, out);
      split_into(Int(n / d), out);
      return;
    }
  }
}

}  // namespace

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rat x(num, den);
  x.canonicalize();
  return x;
}

Int parse_int(const std::string& text) {
  if (!valid_integer_literal(text)) {
    throw DomainError("not an integer: '" + text + "'");
  }
  return Int(text[0] == '+' ? text.substr(1) : text, 10);
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  std::string den = text.substr(slash + 1);
  if (!valid_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw DomainError("not a rational: '" + text + "'");
  }
  return make_rat(parse_int(text.substr(0, slash)), parse_int(den));
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Place Place::prime(const Int& p) {
  require_prime(p, "Place");
  return Place(p);
}

const Int& Place::p() const {
  if (is_infinite()) throw DomainError("the infinite place has no prime");
  return p_;
}

std::string Place::to_string() const {
  return is_infinite() ? "inf" : p_.get_str();
}

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "infinity") return Place::infinity();
  return Place::prime(parse_int(text));
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [p, e] : primes) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

std::string Factorization::to_string() const {
  std::string out = sign < 0 ? "-" : "";
  if (primes.empty()) return out + "1";
  bool first = true;
  for (const auto& [p, e] : primes) {
    if (!first) out += " * ";
    first = false;
    out += p.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

long vp(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("vp: zero has no valuation");
  require_prime(p, "vp");
  return static_cast<long>(mpz_remove(Int().get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long vp(const Rat& x, const Int& p) {
  if (x == 0) throw DomainError("vp: zero has no valuation");
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

Int strip_prime(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("strip_prime: zero input");
  Int u;
  mpz_remove(u.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  return u;
}

int legendre(const Int& a, const Int& p) {
  if (p == 2) throw DomainError("legendre: p = 2 is handled by mod2symbol");
  require_prime(p, "legendre");
  Int r = a % p;
  if (r < 0) r += p;
  if (r == 0) throw DomainError("legendre: p divides a");
  Int e = (p - 1) / 2, out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

int mod2symbol(const Int& a) {
  if (mpz_even_p(a.get_mpz_t())) throw DomainError("mod2symbol: even argument");
  unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

Factorization factorize(const Int& n) {
  if (n == 0) throw DomainError("factorize: zero input");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Int rest = abs(n);
  for (unsigned long p : small_primes()) {
    if (rest == 1) break;
    if (Int(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++f.primes[Int(p)];
    }
  }
  split_into(rest, f.primes);
  return f;
}

std::vector<Int> odd_prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factorize(n).primes) {
    if (p != 2) out.push_back(p);
  }
  return out;
}

Int square_class(const Rat& x) {
  if (x == 0) throw DomainError("square_class: zero input");
  const Factorization f = factorize(x.get_num() * x.get_den());
  Int out = f.sign;
  for (const auto& [p, e] : f.primes)
    if (e % 2 == 1) out *= p;
  return out;
}

bool is_square_in(const Rat& x, const Place& v) {
  if (x == 0) throw DomainError("is_square_in: zero input");
  if (v.is_infinite()) return x > 0;
  const Int& p = v.p();
  if (vp(x, p) % 2 != 0) return false;
  // Same square class, integral, with the p-part removed.
  Int unit = strip_prime(x.get_num() * x.get_den(), p);
  if (p == 2) return mpz_fdiv_ui(unit.get_mpz_t(), 8) == 1;
  return legendre(unit, p) == 1;
}

bool is_rational_square(const Rat& x) {
  if (x < 0) return false;
  return mpz_perfect_square_p(x.get_num_mpz_t()) &&
         mpz_perfect_square_p(x.get_den_mpz_t());
}

bool three_squares_excluded(const Int& n) {
  if (n <= 0) throw DomainError("three_squares_excluded: n must be positive");
  Int m = n;
  while (mpz_divisible_ui_p(m.get_mpz_t(), 4)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), 4);
  return mpz_fdiv_ui(m.get_mpz_t(), 8) == 7;
}

}  // namespace k3zd
