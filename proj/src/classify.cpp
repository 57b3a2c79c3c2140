#include "k3zd/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/quadform.hpp"

namespace k3zd {
namespace {

using Pair = std::pair<std::size_t, std::size_t>;

std::vector<Pair> upper_pairs(std::size_t n) {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

std::set<Pair> zero_pairs(const IntMatrix& g) {
  std::set<Pair> z;
  for (auto [i, j] : upper_pairs(g.rows()))
    if (g(i, j) == 0) z.emplace(i, j);
  return z;
}

// Canonical zero patterns of the six shapes.
struct Shape {
  int case_id;
  std::size_t rank;
  std::set<Pair> zeros;
  std::vector<std::string> names;
  std::vector<Pair> entries;  // where each parameter sits (as half-entries)
};

const std::vector<Shape>& shapes() {
  static const std::vector<Shape> all = {
      {1, 2, {}, {"b"}, {{0, 1}}},
      {2, 3, {{0, 1}}, {"m", "n"}, {{0, 2}, {1, 2}}},
      {3, 3, {}, {"l", "m", "n"}, {{0, 1}, {0, 2}, {1, 2}}},
      {4, 4, {{0, 1}, {0, 2}, {1, 2}}, {"l1", "l2", "l3"}, {{0, 3}, {1, 3}, {2, 3}}},
      {5, 4, {{0, 1}}, {"m1", "m2", "m3", "m4", "m5"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}},
      {6, 4, {}, {"s12", "s13", "s14", "s23", "s24", "s34"},
       {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}},
  };
  return all;
}

Int sq(const Int& x) { return x * x; }

std::vector<Int> merge_odd_primes(const std::vector<Int>& a, const std::vector<Place>& places) {
  std::vector<Int> out = a;
  for (const Place& v : places)
    if (!v.is_infinite() && v.p() != 2) out.push_back(v.p());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ShapeQuantities {
  std::vector<Quantity> values;
  const Int& get(const std::string& name) const {
    for (const Quantity& q : values)
      if (q.name == name) return q.value;
    throw InternalInconsistency("missing quantity " + name);
  }
};

ShapeQuantities quantities_for(const CaseMatch& m) {
  const IntVector& s = m.parameters;
  ShapeQuantities q;
  switch (m.case_id) {
    case 1:
      q.values = {{"b", s[0]}};
      break;
    case 2:
      q.values = {{"m^2+n^2-1", sq(s[0]) + sq(s[1]) - 1}};
      break;
    case 3: {
      const Int &l = s[0], &mm = s[1], &n = s[2];
      q.values = {{"l^2-1", sq(l) - 1}, {"l^2+m^2+n^2+2lmn-1", sq(l) + sq(mm) + sq(n) + 2 * l * mm * n - 1}};
      break;
    }
    case 4:
      q.values = {{"l1^2+l2^2+l3^2-1", sq(s[0]) + sq(s[1]) + sq(s[2]) - 1}};
      break;
    case 5: {
      const Int a = sq(s[0]) + sq(s[2]) - 1;
      const Int b = s[0] * s[1] + s[2] * s[3] + s[4];
      const Int c = sq(s[1]) + sq(s[3]) - 1;
      q.values = {{"A", a}, {"B", b}, {"C", c}, {"B^2-AC", sq(b) - a * c}};
      break;
    }
    case 6: {
      const Int &s12 = s[0], &s13 = s[1], &s14 = s[2], &s23 = s[3], &s24 = s[4], &s34 = s[5];
      const Int e = sq(s12) - 1;
      const Int a = e * (sq(s13) - 1) - sq(s12 * s13 + s23);
      const Int b = e * (s13 * s14 + s34) - (s12 * s13 + s23) * (s12 * s14 + s24);
      const Int d = e * (sq(s14) - 1) - sq(s12 * s14 + s24);
      q.values = {{"A", a}, {"B", b}, {"D", d}, {"E", e}, {"AD-B^2", a * d - sq(b)}};
      break;
    }
    default:
      throw DomainError("no case matched");
  }
  return q;
}

CandidateRow evaluate_at(const CaseMatch& m, const ShapeQuantities& q, const Int& p, const Rat& disc) {
  const Place v = Place::prime(p);
  CandidateRow row;
  row.prime = p;
  switch (m.case_id) {
    case 2:
      row.symbol = hilbert_symbol(Rat(q.get("m^2+n^2-1")), Rat(-1), v);
      row.satisfied = row.symbol == -1;
      break;
    case 3:
      row.symbol = hilbert_symbol(Rat(q.get("l^2-1")), Rat(q.get("l^2+m^2+n^2+2lmn-1")), v);
      row.satisfied = row.symbol == -1;
      break;
    case 5:
      row.d_square = is_square_in(disc, v);
      row.symbol = hilbert_symbol(Rat(-q.get("A")), Rat(-1), v);
      row.satisfied = *row.d_square && row.symbol == -1;
      break;
    case 6:
      row.d_square = is_square_in(disc, v);
      row.symbol = hilbert_symbol(Rat(q.get("E")), Rat(-q.get("A")), v);
      row.satisfied = *row.d_square && row.symbol == -1;
      break;
    default:
      throw DomainError("shape has no prime-wise condition");
  }
  return row;
}

}  // namespace

bool Admissibility::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> Admissibility::failures() const {
  std::vector<std::string> out;
  for (const Check& c : checks)
    if (!c.passed) out.push_back(c.id + ": " + c.detail + " (" + c.basis + ")");
  return out;
}

Admissibility validate_k3(const IntMatrix& g) {
  if (!g.is_square()) throw DomainError("validate_k3: matrix is not square");
  if (!g.is_symmetric()) throw DomainError("validate_k3: matrix is not symmetric");
  const std::size_t rho = g.rows();
  Admissibility a;

  a.checks.push_back({"rank", rho >= 2 && rho <= 4, "rho = " + std::to_string(rho),
                      "a K3 surface with d(X) = 1 and a negative curve has no square-zero class, "
                      "hence 2 <= rho <= 4"});

  bool diag_ok = true;
  for (std::size_t i = 0; i < rho; ++i) diag_ok = diag_ok && g(i, i) == -2;
  a.checks.push_back({"diagonal", diag_ok, diag_ok ? "all curves are (-2)-curves" : "a diagonal entry differs from -2",
                      "every negative curve on a K3 surface is a smooth rational (-2)-curve"});

  std::string bad;
  for (auto [i, j] : upper_pairs(rho)) {
    const Int& x = g(i, j);
    const bool ok = x == 0 || (x >= 4 && mpz_even_p(x.get_mpz_t()));
    if (!ok && bad.empty()) {
      bad = "C" + std::to_string(i + 1) + ".C" + std::to_string(j + 1) + " = " + x.get_str();
    }
  }
  a.checks.push_back({"off_diagonal", bad.empty(), bad.empty() ? "all intersections in {0, 4, 6, ...}" : bad,
                      "two (-2)-curves with non-negative-definite span meet in 2k with k > 1"});

  bool sig_ok = false;
  std::string sig_detail;
  if (rho >= 2 && rho <= QuadraticForm::kMaxDimension) {
    const QuadraticForm q(g);
    const Signature s = signature(q);
    sig_ok = s.zero == 0 && s.positive == 1;
    sig_detail = "signature (" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")" +
                 (s.zero ? ", degenerate" : "");
  } else {
    sig_detail = "rank outside the supported range";
  }
  a.checks.push_back({"signature", sig_ok, sig_detail,
                      "Hodge index theorem: NS(X) has signature (1, rho - 1)"});

  bool even = true;
  for (std::size_t i = 0; i < rho; ++i) even = even && mpz_even_p(g(i, i).get_mpz_t());
  a.checks.push_back({"even", even, even ? "even lattice" : "odd self-intersection",
                      "the Neron-Severi lattice of a K3 surface is even"});
  return a;
}

IntMatrix CaseMatch::half_gram() const {
  const Shape* shape = nullptr;
  for (const Shape& s : shapes())
    if (s.case_id == case_id) shape = &s;
  if (!shape) throw DomainError("half_gram: no case matched");
  IntMatrix h(shape->rank, shape->rank);
  for (std::size_t i = 0; i < shape->rank; ++i) h(i, i) = -1;
  for (std::size_t k = 0; k < parameters.size(); ++k) {
    auto [i, j] = shape->entries[k];
    h(i, j) = h(j, i) = parameters[k];
  }
  return h;
}

CaseMatch match_case(const IntMatrix& g) {
  CaseMatch out;
  const std::size_t rho = g.rows();
  std::vector<std::size_t> perm(rho);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const IntMatrix pg = permute(g, perm);
    const std::set<Pair> zeros = zero_pairs(pg);
    for (const Shape& s : shapes()) {
      if (s.rank != rho || s.zeros != zeros) continue;
      out.case_id = s.case_id;
      out.permutation = perm;
      out.parameter_names = s.names;
      for (auto [i, j] : s.entries) out.parameters.push_back(pg(i, j) / 2);
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ConditionReport check_case_condition(const CaseMatch& m) {
  if (!m.matched()) throw DomainError("check_case_condition: no case matched");
  const ShapeQuantities q = quantities_for(m);
  ConditionReport r;
  r.quantities = q.values;

  auto finish_prime_test = [&](const std::vector<Int>& candidates, const Rat& disc) {
    for (const Int& p : candidates) {
      CandidateRow row = evaluate_at(m, q, p, disc);
      if (row.satisfied) r.certificate_primes.push_back(p);
      r.candidates.push_back(row);
    }
    r.holds = !r.certificate_primes.empty();
  };

  switch (m.case_id) {
    case 1:
      r.holds = m.parameters[0] >= 2;
      r.notes.push_back("rank 2: every b > 1 qualifies");
      break;
    case 2: {
      const Int& d = q.get("m^2+n^2-1");
      finish_prime_test(odd_prime_divisors(d), Rat(0));
      // (D, -1)_p = -1 iff v_p(D) odd and p = 3 mod 4.
      for (const CandidateRow& row : r.candidates) {
        const bool elementary = vp(d, row.prime) % 2 == 1 && mpz_fdiv_ui(row.prime.get_mpz_t(), 4) == 3;
        if (elementary != row.satisfied) r.internally_consistent = false;
      }
      break;
    }
    case 3: {
      const Int product = q.get("l^2-1") * q.get("l^2+m^2+n^2+2lmn-1");
      finish_prime_test(odd_prime_divisors(product), Rat(0));
      r.notes.push_back("certificate primes are determined by evaluating the symbol at every odd prime dividing the product");
      break;
    }
    case 4: {
      const Int& n = q.get("l1^2+l2^2+l3^2-1");
      r.holds = three_squares_excluded(n);
      if (r.holds) r.certificate_primes.push_back(2);
      r.notes.push_back(r.holds ? n.get_str() + " has the form 4^a(8k-1), so it is not a sum of three squares"
                                : n.get_str() + " is a sum of three squares");
      break;
    }
    case 5: {
      if (q.get("B^2-AC") <= 0) {
        r.notes.push_back("signature precondition B^2 > AC fails");
        break;
      }
      const QuadraticForm half(m.half_gram());
      const Rat disc = discriminant(half);
      r.quantities.push_back({"discriminant", disc.get_num()});
      finish_prime_test(merge_odd_primes(odd_prime_divisors(2 * q.get("A")), critical_places(half)), disc);
      r.notes.push_back("candidate primes: odd divisors of 2A together with the critical primes of the form");
      break;
    }
    case 6: {
      if (q.get("AD-B^2") <= 0) {
        r.notes.push_back("signature precondition AD - B^2 > 0 fails");
        break;
      }
      const QuadraticForm half(m.half_gram());
      const Rat disc = discriminant(half);
      r.quantities.push_back({"discriminant", disc.get_num()});
      const Int product = q.get("E") * -q.get("A");
      finish_prime_test(merge_odd_primes(odd_prime_divisors(product), critical_places(half)), disc);
      r.notes.push_back("second factor evaluated as s12^2+s13^2+s23^2+2*s12*s13*s23-1 = -A");
      r.notes.push_back("candidate primes: odd divisors of E*(-A) together with the critical primes of the form");
      break;
    }
    default:
      throw DomainError("check_case_condition: unknown case");
  }
  return r;
}

std::optional<CandidateRow> condition_at_prime(const CaseMatch& m, const Int& p) {
  if (m.case_id != 2 && m.case_id != 3 && m.case_id != 5 && m.case_id != 6) return std::nullopt;
  if (p == 2 || !is_prime(p)) throw DomainError("condition_at_prime: p must be an odd prime");
  Rat disc = 0;
  if (m.case_id >= 5) disc = discriminant(QuadraticForm(m.half_gram()));
  return evaluate_at(m, quantities_for(m), p, disc);
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::D1:
      return "D1";
    case Answer::NotD1:
      return "NotD1";
    case Answer::Inconsistent:
      return "Inconsistent";
  }
  return "?";
}

std::vector<Int> K3Verdict::certificate_primes() const {
  if (condition && !condition->certificate_primes.empty()) return condition->certificate_primes;
  if (crosscheck && is_anisotropic(crosscheck->engine)) {
    const Place& v = std::get<Anisotropic>(crosscheck->engine).place;
    if (!v.is_infinite()) return {v.p()};
  }
  return {};
}

K3Verdict decide_d1(const IntMatrix& gram, const DecideOptions& options) {
  K3Verdict out;
  out.gram = gram;
  out.admissibility = validate_k3(gram);
  out.caveats.push_back(
      "the effective cone is modeled by the supplied (-2)-curves; pseudoeffective and nef are taken "
      "relative to them");
  if (!out.admissibility.passed()) {
    out.answer = Answer::NotD1;
    out.reasons = out.admissibility.failures();
    return out;
  }

  out.match = match_case(gram);
  if (out.match->matched()) out.condition = check_case_condition(*out.match);
  out.crosscheck = crosscheck(gram, options.crosscheck);

  if (options.corroboration_height >= 0) {
    const SurfaceLattice lattice(gram);
    out.numthm = check_numthm(lattice);
    try {
      out.max_denominator = max_denominator_bounded(lattice, options.corroboration_height);
    } catch (const std::exception& e) {
      out.corroboration_error = e.what();
    }
  }

  if (options.claimed_certificate) {
    const Int& p = *options.claimed_certificate;
    ClaimCheck claim;
    claim.prime = p;
    if (out.match->matched() && p != 2 && is_prime(p)) claim.condition_at_prime = [&]() -> std::optional<bool> {
        auto row = condition_at_prime(*out.match, p);
        if (!row) return std::nullopt;
        return row->satisfied;
      }();
    if (is_prime(p)) claim.engine_anisotropic_at_prime = !is_isotropic_local(QuadraticForm(gram), Place::prime(p));
    claim.reconciled = claim.engine_anisotropic_at_prime && claim.condition_at_prime.value_or(true);
    out.claim = claim;
  }

  const CrosscheckReport& cc = *out.crosscheck;
  if (!cc.consistent()) {
    out.answer = Answer::Inconsistent;
    out.reasons = cc.disagreements;
  } else if (!is_anisotropic(cc.engine)) {
    out.answer = Answer::NotD1;
    out.reasons.push_back("the Picard form is isotropic over Q, so a nonzero class of square zero exists");
  } else if (!out.match->matched()) {
    out.answer = Answer::NotD1;
    out.reasons.push_back("the zero pattern matches none of the six admissible shapes");
    out.caveats.push_back("this relies on the six shapes being exhaustive for d(X) = 1");
  } else {
    out.answer = Answer::D1;
    out.reasons.push_back("passes every condition for shape " + std::to_string(out.match->case_id));
    out.caveats.push_back("the conditions are necessary for d(X) = 1; their sufficiency is not established");
  }
  if (out.match->case_id == 6) {
    out.caveats.push_back("shape 6 second factor uses 2*s12*s13*s23");
  }
  return out;
}

std::vector<CatalogRow> search_lattices(int rho, long max_half_entry, const SearchFilters& filters) {
  if (rho < 2 || rho > 4) throw DomainError("search_lattices: rho must be 2, 3 or 4");
  if (max_half_entry < 2) throw DomainError("search_lattices: max_half_entry must be >= 2");
  const std::vector<Pair> pairs = upper_pairs(static_cast<std::size_t>(rho));
  std::vector<long> values{0};
  for (long v = 2; v <= max_half_entry; ++v) values.push_back(v);

  auto upper = [&](const IntMatrix& g) {
    std::vector<Int> u;
    for (auto [i, j] : pairs) u.push_back(g(i, j));
    return u;
  };

  std::vector<CatalogRow> rows;
  std::vector<std::size_t> idx(pairs.size(), 0);
  for (;;) {
    IntMatrix g(rho, rho);
    for (int i = 0; i < rho; ++i) g(i, i) = -2;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      g(i, j) = g(j, i) = 2 * values[idx[k]];
    }
    const std::vector<Int> mine = upper(g);
    bool canonical = true;
    std::vector<std::size_t> perm(rho);
    std::iota(perm.begin(), perm.end(), 0);
    while (canonical && std::next_permutation(perm.begin(), perm.end())) {
      if (upper(permute(g, perm)) < mine) canonical = false;
    }

    if (canonical && validate_k3(g).passed()) {
      const CaseMatch m = match_case(g);
      if (!filters.case_id || *filters.case_id == m.case_id) {
        const K3Verdict verdict = decide_d1(g, filters.decide);
        if (!filters.only_d1 || verdict.answer == Answer::D1) {
          Int content = 0;
          for (const Int& x : mine) content = gcd(content, x / 2);
          rows.push_back({g, m.case_id, verdict.answer, verdict.certificate_primes(),
                          content == 1 && verdict.answer == Answer::D1});
        }
      }
    }

    std::size_t k = 0;
    while (k < idx.size() && idx[k] + 1 == values.size()) idx[k++] = 0;
    if (k == idx.size()) break;
    ++idx[k];
  }
  return rows;
}

}  // namespace k3zd
