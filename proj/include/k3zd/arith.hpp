#pragma once

// Exact integer and rational primitives: valuations, residue symbols,
// factorization, local square classes and the three-squares test.

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace k3zd {

using Int = mpz_class;
using Rat = mpq_class;

/// Builds a canonical rational num/den (den != 0).
Rat make_rat(const Int& num, const Int& den);

/// Parses "n" or "n/d" (optional sign). Throws DomainError on malformed input.
Rat parse_rat(const std::string& text);
Int parse_int(const std::string& text);

std::string to_string(const Int& n);
std::string to_string(const Rat& x);

bool is_prime(const Int& n);

/// A place of Q: the archimedean place or a (verified) prime.
class Place {
 public:
  static Place infinity() { return Place(Int(0)); }
  /// Throws DomainError unless p is prime.
  static Place prime(const Int& p);

  bool is_infinite() const { return p_ == 0; }
  /// The prime; throws DomainError at infinity.
  const Int& p() const;
  std::string to_string() const;

  /// Infinity sorts before every prime; primes sort numerically.
  friend bool operator<(const Place& a, const Place& b) {
    return a.p_ < b.p_;
  }
  friend bool operator==(const Place& a, const Place& b) {
    return a.p_ == b.p_;
  }

 private:
  explicit Place(Int p) : p_(std::move(p)) {}
  Int p_;
};

/// Parses "inf" or a prime in decimal.
Place parse_place(const std::string& text);

struct Factorization {
  int sign = 1;
  std::map<Int, unsigned> primes;

  Int value() const;
  std::string to_string() const;
};

/// p-adic valuation. n != 0, p prime.
long vp(const Int& n, const Int& p);
long vp(const Rat& x, const Int& p);

/// n / p^vp(n).
Int strip_prime(const Int& n, const Int& p);

/// Legendre symbol (a/p) for odd prime p not dividing a, by Euler's criterion.
int legendre(const Int& a, const Int& p);

/// (a/2) = (-1)^((a^2-1)/8) for odd a.
int mod2symbol(const Int& a);

Factorization factorize(const Int& n);

/// Odd primes dividing n, increasing. n != 0.
std::vector<Int> odd_prime_divisors(const Int& n);

/// The squarefree integer in the rational square class of x != 0.
Int square_class(const Rat& x);

/// Is x a square in the completion at v? x != 0.
bool is_square_in(const Rat& x, const Place& v);

/// Is x the square of a rational (0 counts)?
bool is_rational_square(const Rat& x);

/// True iff n = 4^a (8k - 1), i.e. n is not a sum of three integer squares.
bool three_squares_excluded(const Int& n);

}  // namespace k3zd
