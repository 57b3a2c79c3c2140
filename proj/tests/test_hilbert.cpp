#include "doctest.h"

#include <random>

#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/oracle.hpp"
#include "k3zd/quadform.hpp"

using namespace k3zd;

namespace {

// (a, b)_p = 1 iff z^2 - a x^2 - b y^2 has a primitive p-adic zero, decided
// here by the Hensel-tree search rather than by the symbol formulas.
int searched_symbol(long a, long b, long p) {
  const QuadraticForm q = QuadraticForm::diagonal({Rat(a), Rat(b), Rat(-1)});
  return local_solubility_search(q, p, default_precision(q, p)) ? 1 : -1;
}

}  // namespace

TEST_CASE("worked example symbols") {
  CHECK(hilbert_symbol(7, -1, Place::prime(7)) == -1);
  CHECK(hilbert_symbol(-84, -1, Place::prime(7)) == -1);
  CHECK(hilbert_symbol(57, 3, Place::prime(19)) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::prime(2)) == -1);
  CHECK(hilbert_symbol(7, -7, Place::prime(7)) == 1);
  CHECK(hilbert_symbol(3, 27, Place::prime(3)) == -1);
  CHECK(hilbert_symbol(1, 5, Place::infinity()) == 1);
}

TEST_CASE("infinite place is the sign rule") {
  for (long a : {-3, -1, 2, 5})
    for (long b : {-7, -2, 1, 4})
      CHECK(hilbert_symbol(a, b, Place::infinity()) == ((a < 0 && b < 0) ? -1 : 1));
}

TEST_CASE("symbol agrees with p-adic solubility search") {
  for (long p : {2, 3, 5, 7}) {
    for (long a = -20; a <= 20; ++a) {
      if (a == 0) continue;
      for (long b = -20; b <= 20; ++b) {
        if (b == 0) continue;
        CHECK_MESSAGE(hilbert_symbol(a, b, Place::prime(p)) == searched_symbol(a, b, p), "(", a, ",", b, ")_",
                      p);
      }
    }
  }
}

TEST_CASE("rational arguments reduce to square classes") {
  const Place p3 = Place::prime(3), p2 = Place::prime(2);
  CHECK(hilbert_symbol(make_rat(3, 4), make_rat(27, 25), p3) == hilbert_symbol(3, 3, p3));
  CHECK(hilbert_symbol(make_rat(-1, 9), make_rat(-5, 2), p2) == hilbert_symbol(-1, -10, p2));
  CHECK_THROWS_AS(hilbert_symbol(0, 3, p3), DomainError);
}

TEST_CASE("standard identities hold on a sweep") {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    long n = static_cast<long>(rng() % 121) - 60;
    if (n == 0) n = 1;
    return make_rat(n, static_cast<long>(rng() % 12) + 1);
  };
  for (int i = 0; i < 400; ++i) {
    const Rat a = draw(), b = draw(), c = draw();
    for (const Place& v : {Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7)}) {
      const IdentityCheck r = symbol_identities_check(a, b, c, v);
      CHECK_MESSAGE(r.passed, r.first_violation);
    }
  }
}

TEST_CASE("critical places") {
  const std::vector<Rat> values{make_rat(-21, 5), Rat(22)};
  const std::vector<Place> places = critical_places(values);
  const std::vector<Place> expected{Place::infinity(), Place::prime(2), Place::prime(3), Place::prime(5),
                                    Place::prime(7), Place::prime(11)};
  CHECK(places == expected);
}

TEST_CASE("product formula") {
  const ProductFormulaReport r = product_formula_check(7, -1);
  CHECK(r.holds());
  int minus = 0;
  for (const PlaceSymbol& row : r.table) minus += row.symbol < 0;
  CHECK(minus == 2);  // at 2 and at 7

  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    long n1 = static_cast<long>(rng() % 2001) - 1000, n2 = static_cast<long>(rng() % 2001) - 1000;
    if (n1 == 0 || n2 == 0) continue;
    const Rat a = make_rat(n1, static_cast<long>(rng() % 1000) + 1);
    const Rat b = make_rat(n2, static_cast<long>(rng() % 1000) + 1);
    CHECK(product_formula_check(a, b).holds());
  }
}
