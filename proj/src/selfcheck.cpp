#include "k3zd/selfcheck.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "k3zd/classify.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/oracle.hpp"
#include "k3zd/quadform.hpp"

namespace k3zd {
namespace {

std::string join(const std::vector<Int>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + "}";
}

std::string show(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + ")";
}

std::string show(int s) { return s > 0 ? "+1" : "-1"; }
std::string show(bool b) { return b ? "true" : "false"; }

class Battery {
 public:
  void add(std::string name, std::string expected, const std::function<std::string()>& actual) {
    SelfcheckRow row{std::move(name), std::move(expected), {}, false};
    try {
      row.actual = actual();
    } catch (const std::exception& e) {
      row.actual = std::string("error: ") + e.what();
    }
    row.passed = row.actual == row.expected;
    rows_.push_back(std::move(row));
  }
  std::vector<SelfcheckRow> take() { return std::move(rows_); }

 private:
  std::vector<SelfcheckRow> rows_;
};

IntMatrix case2_22() { return {{-2, 0, 4}, {0, -2, 4}, {4, 4, -2}}; }
IntMatrix case4_224() { return {{-2, 0, 0, 4}, {0, -2, 0, 4}, {0, 0, -2, 8}, {4, 4, 8, -2}}; }
IntMatrix shape5_half() { return {{-1, 0, 6, 2}, {0, -1, 7, 2}, {6, 7, -1, 9}, {2, 2, 9, -1}}; }
IntMatrix shape6_half() { return {{-1, 2, 3, 3}, {2, -1, 3, 2}, {3, 3, -1, 2}, {3, 2, 2, -1}}; }

IntMatrix doubled(const IntMatrix& h) {
  IntMatrix g = h;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= 2;
  return g;
}

std::string quantities(const IntMatrix& gram) {
  const ConditionReport r = check_case_condition(match_case(gram));
  std::string out;
  for (const Quantity& q : r.quantities) {
    if (q.name == "discriminant") continue;
    out += (out.empty() ? "" : " ") + q.name + "=" + q.value.get_str();
  }
  return out;
}

}  // namespace

std::vector<SelfcheckRow> regression_battery() {
  Battery b;
  const Place p2 = Place::prime(2), p7 = Place::prime(7), p19 = Place::prime(19);

  b.add("hilbert (7,-1)_7", "-1", [&] { return show(hilbert_symbol(7, -1, p7)); });
  b.add("hilbert (-84,-1)_7", "-1", [&] { return show(hilbert_symbol(-84, -1, p7)); });
  b.add("hilbert (57,3)_19", "-1", [&] { return show(hilbert_symbol(57, 3, p19)); });
  b.add("hilbert (-1,-1)_2", "-1", [&] { return show(hilbert_symbol(-1, -1, p2)); });
  b.add("hilbert (7,-7)_7", "+1", [&] { return show(hilbert_symbol(7, -7, p7)); });
  b.add("legendre(-13,7)", "+1", [] { return show(legendre(-13, 7)); });
  b.add("vp(637,7)", "2", [] { return std::to_string(vp(Int(637), Int(7))); });
  b.add("factorize(-637)", "-7^2 * 13", [] { return factorize(-637).to_string(); });
  b.add("-13 square at 7", "true", [&] { return show(is_square_in(Rat(-13), p7)); });
  b.add("23 = 4^a(8k-1)", "true", [] { return show(three_squares_excluded(23)); });
  b.add("2^2+2^2+4^2-1", "23", [] { return Int(4 + 4 + 16 - 1).get_str(); });

  b.add("case 2 (2,2) diagonal square classes", "{-1,-1,7}", [] {
    std::vector<Int> classes;
    for (const Rat& c : diagonalize(QuadraticForm(match_case(case2_22()).half_gram())).coefficients)
      classes.push_back(square_class(c));
    std::sort(classes.begin(), classes.end());
    return join(classes);
  });
  b.add("shape 5 example signature", "(1,3,0)", [] {
    const Signature s = signature(QuadraticForm(shape5_half()));
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + "," + std::to_string(s.zero) + ")";
  });
  b.add("shape 5 example discriminant square class", "-13",
        [] { return square_class(discriminant(QuadraticForm(shape5_half()))).get_str(); });
  b.add("shape 5 example d_7 square", "true",
        [&] { return show(local_invariants(QuadraticForm(shape5_half()), p7).d_square); });
  b.add("shape 5 example epsilon_7", "-1", [&] { return show(local_invariants(QuadraticForm(shape5_half()), p7).epsilon); });
  b.add("shape 5 example quantities", "A=84 B=35 C=7 B^2-AC=637", [] { return quantities(doubled(shape5_half())); });
  b.add("shape 6 example quantities", "A=-57 B=-39 D=-40 E=3 AD-B^2=759", [] { return quantities(doubled(shape6_half())); });
  b.add("rank 5 form isotropic at 3", "true", [] {
    return show(is_isotropic_local(QuadraticForm::diagonal({1, 1, 1, 1, 1}), Place::prime(3)));
  });
  b.add("case 2 (2,2) global certificate", "7", [] {
    const IsotropyVerdict v = is_isotropic_global(QuadraticForm(case2_22()), {0});
    return is_anisotropic(v) ? std::get<Anisotropic>(v).place.to_string() : std::string("isotropic");
  });
  b.add("binary (-2,8,-2) isotropic", "false", [] { return show(binary_isotropic(-2, 8, -2)); });
  b.add("binary (-2,4,-2) isotropic", "true", [] { return show(binary_isotropic(-2, 4, -2)); });
  b.add("zero of (-2,4,-2) at height 1", "(1,1)", [] {
    const auto z = find_integer_zero(QuadraticForm(IntMatrix{{-2, 2}, {2, -2}}), 1);
    return z ? show(*z) : std::string("none");
  });

  b.add("validate [[-2,4],[4,-2]]", "true", [] { return show(validate_k3({{-2, 4}, {4, -2}}).passed()); });
  b.add("match case 2 (2,2)", "case 2 (2,2)", [] {
    const CaseMatch m = match_case(case2_22());
    return "case " + std::to_string(m.case_id) + " " + show(m.parameters);
  });
  b.add("match case 4 (2,2,4)", "case 4 (2,2,4)", [] {
    const CaseMatch m = match_case(case4_224());
    return "case " + std::to_string(m.case_id) + " " + show(m.parameters);
  });
  b.add("case 2 (2,2) certificates", "{7}",
        [] { return join(check_case_condition(match_case(case2_22())).certificate_primes); });
  b.add("case 4 (2,2,4) holds", "true", [] { return show(check_case_condition(match_case(case4_224())).holds); });
  b.add("decide [[-2,4],[4,-2]]", "D1 case 1", [] {
    const K3Verdict v = decide_d1({{-2, 4}, {4, -2}});
    return to_string(v.answer) + " case " + std::to_string(v.match->case_id);
  });
  b.add("decide case 2 (2,2)", "D1 {7}", [] {
    const K3Verdict v = decide_d1(case2_22());
    return to_string(v.answer) + " " + join(v.certificate_primes());
  });
  b.add("crosscheck case 2 (2,2)", "consistent anisotropic", [] {
    const CrosscheckReport r = crosscheck(case2_22());
    return std::string(r.consistent() ? "consistent" : "inconsistent") +
           (is_anisotropic(r.engine) ? " anisotropic" : " isotropic");
  });
  b.add("search rho 3, max 2, case 2", "1 row D1", [] {
    SearchFilters f;
    f.case_id = 2;
    const auto rows = search_lattices(3, 2, f);
    return std::to_string(rows.size()) + " row" + (rows.size() == 1 ? "" : "s") +
           (rows.empty() ? "" : " " + to_string(rows.front().answer));
  });
  return b.take();
}

ProductFormulaSweep product_formula_sweep(std::size_t pairs, long bound, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(bound);
  auto draw = [&] {
    const auto num = static_cast<long>(rng() % (2 * span)) - bound;
    const long n = num >= 0 ? num + 1 : num;  // skip zero
    const auto d = static_cast<long>(rng() % span) + 1;
    return make_rat(n, d);
  };
  ProductFormulaSweep out;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Rat a = draw(), b = draw();
    ++out.pairs;
    if (!product_formula_check(a, b).holds()) {
      ++out.failures;
      if (out.failing.size() < 10) out.failing.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace k3zd
