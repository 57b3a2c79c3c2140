// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "k3zd/classify.hpp"
#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/oracle.hpp"
#include "k3zd/quadform.hpp"
#include "k3zd/zariski.hpp"

using namespace k3zd;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail = what;
      passed = false;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool run_criterion(int id, const std::string& title, double limit, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.passed = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double t = seconds_since(start);
  if (limit > 0 && t > limit) {
    out.require(false, "took " + std::to_string(t) + " s, limit " + std::to_string(limit) + " s");
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2f s", t);
  std::cout << (out.passed ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << timing << ")";
  if (!out.detail.empty()) std::cout << " -- " << out.detail;
  std::cout << std::endl;
  return out.passed;
}

IntMatrix doubled(const IntMatrix& h) {
  IntMatrix g = h;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= 2;
  return g;
}

const IntMatrix kCase1{{-2, 4}, {4, -2}};
const IntMatrix kCase2{{-2, 0, 4}, {0, -2, 4}, {4, 4, -2}};
const IntMatrix kCase2b{{-2, 0, 4}, {0, -2, 6}, {4, 6, -2}};
const IntMatrix kCase3{{-2, 4, 4}, {4, -2, 4}, {4, 4, -2}};
const IntMatrix kCase4{{-2, 0, 0, 4}, {0, -2, 0, 4}, {0, 0, -2, 8}, {4, 4, 8, -2}};
const IntMatrix kShape5 = doubled({{-1, 0, 6, 2}, {0, -1, 7, 2}, {6, 7, -1, 9}, {2, 2, 9, -1}});
const IntMatrix kShape6 = doubled({{-1, 2, 3, 3}, {2, -1, 3, 2}, {3, 3, -1, 2}, {3, 2, 2, -1}});

Int quantity(const ConditionReport& r, const std::string& name) {
  for (const Quantity& q : r.quantities)
    if (q.name == name) return q.value;
  throw InternalInconsistency("missing quantity " + name);
}

Outcome battery() {
  Outcome o;
  const Place p2 = Place::prime(2), p7 = Place::prime(7), p19 = Place::prime(19);
  o.require(hilbert_symbol(7, -1, p7) == -1, "(7,-1)_7");
  o.require(hilbert_symbol(-84, -1, p7) == -1, "(-84,-1)_7");
  o.require(hilbert_symbol(57, 3, p19) == -1, "(57,3)_19");
  o.require(hilbert_symbol(-1, -1, p2) == -1, "(-1,-1)_2");
  o.require(legendre(-13, 7) == 1, "legendre(-13,7)");
  const Factorization f = factorize(-637);
  o.require(f.sign == -1 && f.primes == std::map<Int, unsigned>{{7, 2}, {13, 1}}, "-637 = 7^2 * (-13)");
  o.require(Int(2 * 2 + 2 * 2 + 4 * 4 - 1) == 23 && three_squares_excluded(23), "23 = 4^0(8*3-1)");
  const ConditionReport s5 = check_case_condition(match_case(kShape5));
  o.require(quantity(s5, "A") == 84 && quantity(s5, "B") == 35 && quantity(s5, "C") == 7 &&
                quantity(s5, "B^2-AC") == 637,
            "shape 5 quantities");
  const ConditionReport s6 = check_case_condition(match_case(kShape6));
  o.require(quantity(s6, "A") == -57 && quantity(s6, "B") == -39 && quantity(s6, "D") == -40 &&
                quantity(s6, "E") == 3 && quantity(s6, "AD-B^2") == 759,
            "shape 6 quantities");
  return o;
}

// Every place where (a, b)_v can be -1, collected here from the
// factorizations rather than through the library's critical-place helper.
Outcome product_formula() {
  Outcome o;
  std::mt19937_64 rng(0x5eed0001);
  auto draw = [&] {
    long n = static_cast<long>(rng() % 1001) - 500;
    if (n == 0) n = 1;
    return make_rat(n, static_cast<long>(rng() % 500) + 1);
  };
  std::size_t good = 0;
  for (int i = 0; i < 10000; ++i) {
    const Rat a = draw(), b = draw();
    std::set<Int> primes{2};
    for (const Int& x : {a.get_num(), a.get_den(), b.get_num(), b.get_den()})
      for (const auto& [p, e] : factorize(x).primes) primes.insert(p);
    int product = hilbert_symbol(a, b, Place::infinity());
    for (const Int& p : primes) product *= hilbert_symbol(a, b, Place::prime(p));
    if (product == 1) ++good;
  }
  o.require(good == 10000, std::to_string(good) + "/10000 pairs");
  o.detail = std::to_string(good) + "/10000 pairs satisfy the product formula";
  return o;
}

Outcome local_agreement() {
  Outcome o;
  std::mt19937_64 rng(0x5eed0002);
  std::size_t compared = 0, agreed = 0, skipped = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<Rat> coeffs;
    for (std::size_t j = 0; j < n; ++j) {
      long a = static_cast<long>(rng() % 61) - 30;
      if (a == 0) a = 1;
      coeffs.emplace_back(a);
    }
    const QuadraticForm q = QuadraticForm::diagonal(coeffs);
    for (long p : {2, 3, 5, 7, 11, 13}) {
      bool search;
      try {
        search = local_solubility_search(q, p, default_precision(q, p));
      } catch (const BudgetExceeded&) {
        ++skipped;
        continue;
      }
      ++compared;
      if (search == is_isotropic_local(q, Place::prime(p))) ++agreed;
    }
  }
  o.require(agreed == compared, std::to_string(compared - agreed) + " disagreements");
  o.require(compared > 0, "nothing compared");
  if (o.passed) {
    o.detail = std::to_string(agreed) + "/" + std::to_string(compared) + " agree, " + std::to_string(skipped) +
               " skipped";
  }
  return o;
}

bool primitive_zero(const QuadraticForm& q, const IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g == 1 && q.evaluate(v) == 0;
}

Outcome global_soundness() {
  Outcome o;
  for (const IntMatrix& g : {kCase2, kCase2b, kCase3}) {
    const QuadraticForm q(g);
    o.require(is_anisotropic(is_isotropic_global(q, {0})), "engine calls " + to_string(g) + " isotropic");
    o.require(!find_integer_zero(q, 2000), "zero found for " + to_string(g));
    o.require(!find_integer_zero_exhaustive(q, 60), "brute force found a zero for " + to_string(g));
  }

  std::vector<QuadraticForm> isotropic{
      QuadraticForm::diagonal({1, -1}),
      QuadraticForm::diagonal({1, -4}),
      QuadraticForm(IntMatrix{{1, 2}, {2, 3}}),
      QuadraticForm(IntMatrix{{-2, 0, 6}, {0, -2, 6}, {6, 6, -2}}),   // shape 2, (3,3): 17 = 1 mod 4
      QuadraticForm(IntMatrix{{-2, 0, 8}, {0, -2, 10}, {8, 10, -2}}),  // shape 2, (4,5): 40 = 8 * 5
  };
  std::mt19937_64 rng(0x5eed0003);
  while (isotropic.size() < 60) {
    std::vector<Rat> c;
    for (int j = 0; j < 3; ++j) {
      long a = static_cast<long>(rng() % 61) - 30;
      c.emplace_back(a == 0 ? 1 : a);
    }
    const QuadraticForm q = QuadraticForm::diagonal(c);
    if (!is_anisotropic(is_isotropic_global(q, {0}))) isotropic.push_back(q);
  }
  std::size_t witnessed = 0;
  for (const QuadraticForm& q : isotropic) {
    if (is_anisotropic(is_isotropic_global(q, {0}))) {
      o.require(false, "isotropic fixture judged anisotropic");
      continue;
    }
    const auto w = find_integer_zero(q, 10000);
    o.require(w.has_value(), "no witness up to 10^4");
    if (w) {
      o.require(primitive_zero(q, *w), "witness is not a primitive zero");
      ++witnessed;
    }
  }
  if (o.passed) o.detail = "3 anisotropic forms clean to height 2000, " + std::to_string(witnessed) + " witnesses";
  return o;
}

int cli_exit_code(const IntMatrix& g) {
  const auto path = std::filesystem::temp_directory_path() / "k3zd_acceptance_shape6.json";
  {
    std::ofstream out(path);
    out << "{\"gram\": [";
    for (std::size_t i = 0; i < g.rows(); ++i) {
      out << (i ? "," : "") << "[";
      for (std::size_t j = 0; j < g.cols(); ++j) out << (j ? "," : "") << g(i, j).get_str();
      out << "]";
    }
    out << "]}";
  }
  const std::string file = path.string();
  const char* argv[] = {"k3zd", "classify", file.c_str()};
  std::ostringstream out, err;
  return run_cli(3, argv, out, err);
}

Outcome classifier() {
  Outcome o;
  const K3Verdict v1 = decide_d1(kCase1);
  o.require(v1.answer == Answer::D1 && v1.match->case_id == 1, "case 1 fixture");

  const K3Verdict v2 = decide_d1(kCase2);
  o.require(v2.answer == Answer::D1 && v2.certificate_primes() == IntVector{7}, "case 2 fixture");

  DecideOptions claim;
  claim.claimed_certificate = 7;
  const K3Verdict v3 = decide_d1(kCase3, claim);
  o.require(v3.answer == Answer::D1 && v3.certificate_primes() == IntVector{3}, "case 3 fixture");
  o.require(v3.claim && !v3.claim->reconciled, "case 3 claimed prime 7 not flagged");

  o.require(decide_d1(kCase4).answer == Answer::D1, "case 4 fixture");

  const K3Verdict v5 = decide_d1(kShape5);
  o.require(v5.answer == Answer::D1 && v5.certificate_primes() == IntVector{7}, "shape 5 fixture");

  const K3Verdict v6 = decide_d1(kShape6);
  const CrosscheckReport& cc = *v6.crosscheck;
  o.require(cc.lemma_anisotropic.has_value(), "shape 6: case condition not run");
  o.require(cc.zero_search != ZeroSearchOutcome::Skipped, "shape 6: zero search not run");
  const bool agree = cc.consistent();
  if (agree) {
    const Answer expected = is_anisotropic(cc.engine) ? Answer::D1 : Answer::NotD1;
    o.require(v6.answer == expected, "shape 6: verdict differs from the agreed outcome");
  } else {
    o.require(v6.answer == Answer::Inconsistent, "shape 6: disagreement not reported");
  }
  const int code = cli_exit_code(kShape6);
  o.require((code == 3) == !agree, "shape 6: exit code " + std::to_string(code));
  if (o.passed) {
    o.detail = std::string("shape 6 example: methods ") + (agree ? "agree" : "disagree") + ", answer " +
               to_string(v6.answer) + ", exit " + std::to_string(code);
  }
  return o;
}

std::string check_decomposition(const SurfaceLattice& l, const IntVector& d) {
  const ZariskiDecomposition z = zariski_decompose(l, d);
  const std::size_t n = l.rank();
  for (std::size_t i = 0; i < n; ++i) {
    if (z.positive[i] + z.negative[i] != d[i]) return "P + N != D";
    if (z.negative[i] < 0) return "N has a negative coefficient";
    if (l.intersect(z.positive, i) < 0) return "P is not nef";
  }
  for (std::size_t j : z.support)
    if (l.intersect(z.positive, j) != 0) return "P is not orthogonal to the support";
  if (!z.support.empty()) {
    const IntMatrix sub = principal_submatrix(l.gram(), z.support);
    const bool negdef = sub.rows() == 1 ? sub(0, 0) < 0 : signature(QuadraticForm(sub)).negative == sub.rows();
    if (!negdef) return "support is not negative definite";
    if (abs(determinant(sub)) % z.denominator != 0) return "denominator does not divide the support determinant";
  } else if (z.denominator != 1) {
    return "nonzero denominator without support";
  }
  return "";
}

Outcome zariski() {
  Outcome o;
  const SurfaceLattice hc(IntMatrix{{2, 1}, {1, -2}});
  const ZariskiDecomposition a = zariski_decompose(hc, {1, 1});
  o.require(a.negative == RatVector{0, make_rat(1, 2)} && a.denominator == 2, "[[2,1],[1,-2]] fixture");
  const ZariskiDecomposition b = zariski_decompose(SurfaceLattice(kCase1), {3, 1});
  o.require(b.negative == RatVector{1, 0} && b.denominator == 1, "[[-2,4],[4,-2]] fixture");

  const std::vector<IntMatrix> lattices{
      {{2, 1}, {1, -2}},
      kCase1,
      {{2, 1, 1}, {1, -2, 0}, {1, 0, -2}},
      kCase2,
      kCase3,
      {{4, 2, 1}, {2, -2, 1}, {1, 1, -2}},
      {{2, 3, 0}, {3, -4, 1}, {0, 1, -3}},
      kCase4,
      {{6, 1, 2, 0}, {1, -2, 1, 0}, {2, 1, -2, 0}, {0, 0, 0, 2}},
      {{2, 1, 1, 1}, {1, -1, 0, 0}, {1, 0, -3, 1}, {1, 0, 1, -5}},
  };
  std::mt19937_64 rng(0x5eed0006);
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    const IntMatrix& g = lattices[i % lattices.size()];
    IntVector d;
    for (std::size_t j = 0; j < g.rows(); ++j) d.emplace_back(static_cast<long>(rng() % 10));
    const std::string problem = check_decomposition(SurfaceLattice(g), d);
    o.require(problem.empty(), problem + " on " + to_string(g));
    ++checked;
  }
  if (o.passed) o.detail = std::to_string(checked) + " random divisors";
  return o;
}

Outcome bounded_denominator() {
  Outcome o;
  for (const IntMatrix& g : {kCase1, kCase2, kCase3, kCase4, kShape5}) {
    o.require(max_denominator_bounded(SurfaceLattice(g), 6) == 1, "denominator > 1 on " + to_string(g));
  }
  o.require(max_denominator_bounded(SurfaceLattice(IntMatrix{{2, 1}, {1, -2}}), 2) == 2, "[[2,1],[1,-2]] H=2");
  return o;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  bool ok = true;
  ok &= run_criterion(1, "worked-example value battery", 1.0, battery);
  ok &= run_criterion(2, "product formula on 10^4 seeded pairs", 10.0, product_formula);
  ok &= run_criterion(3, "local isotropy vs mod p^k search on 500 seeded forms", 60.0, local_agreement);
  ok &= run_criterion(4, "global isotropy soundness", 0, global_soundness);
  ok &= run_criterion(5, "classifier fixtures", 0, classifier);
  ok &= run_criterion(6, "Zariski decomposition fixtures and 200 random divisors", 0, zariski);
  ok &= run_criterion(7, "bounded denominator corroboration", 0, bounded_denominator);
  const double total = seconds_since(start);
  std::cout << "acceptance total " << total << " s: " << (ok ? "all criteria pass" : "FAILURES") << std::endl;
  return ok ? 0 : 1;
}
