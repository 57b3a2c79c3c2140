#include "k3zd/oracle.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>

#include "k3zd/classify.hpp"
#include "k3zd/errors.hpp"

namespace k3zd {
namespace {

constexpr double kFastScanBudget = 4e10;
constexpr double kExhaustiveBudget = 1e8;

Int max_norm(const IntVector& v) {
  Int m = 0;
  for (const Int& x : v) m = std::max(m, Int(abs(x)));
  return m;
}

// Divide by the content and make the first nonzero coordinate positive.
IntVector canonical_zero(IntVector v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  for (Int& x : v) x /= g;
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

class BestZero {
 public:
  explicit BestZero(const QuadraticForm& q) : q_(q) {}

  void offer(const IntVector& raw) {
    IntVector v = canonical_zero(raw);
    if (q_.evaluate(v) != 0) {
      throw InternalInconsistency("zero search produced a non-zero of the form");
    }
    if (!best_ || witness_precedes(v, *best_)) best_ = std::move(v);
  }

  const std::optional<IntVector>& best() const { return best_; }

 private:
  const QuadraticForm& q_;
  std::optional<IntVector> best_;
};

constexpr std::uint64_t square_mask_mod64() {
  std::uint64_t mask = 0;
  for (std::uint64_t i = 0; i < 64; ++i) mask |= std::uint64_t{1} << ((i * i) % 64);
  return mask;
}

bool exact_sqrt(std::int64_t v, std::int64_t& root) {
  if (v < 0) return false;
  if (!((square_mask_mod64() >> (v & 63)) & 1)) return false;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  root = r;
  return r * r == v;
}

bool exact_sqrt(const Int& v, Int& root) {
  if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  return true;
}

std::int64_t to_i64(const Int& v) { return static_cast<std::int64_t>(v.get_si()); }
Int to_int(std::int64_t v) { return Int(static_cast<long>(v)); }
Int to_int(const Int& v) { return v; }

template <class Z>
Z from_int(const Int& v) {
  if constexpr (std::is_same_v<Z, Int>) {
    return v;
  } else {
    return to_i64(v);
  }
}

// q(y, t) = a t^2 + 2 (g.y) t + y^T P y with the solved coordinate last.
// Its roots in t are (-(g.y) +- sqrt(delta(y))) / a where
// delta(y) = y^T (g g^T - a P) y.
struct LastCoordinateSolver {
  std::vector<std::size_t> order;  // order[i] = original index of coordinate i
  Int a;
  IntVector g;
  IntMatrix delta;
  Int delta_abs_sum;
  Int g_abs_sum;

  LastCoordinateSolver(const IntMatrix& gram, std::size_t solved) {
    const std::size_t n = gram.rows();
    for (std::size_t i = 0; i < n; ++i)
      if (i != solved) order.push_back(i);
    order.push_back(solved);
    const std::size_t m = n - 1;
    a = gram(solved, solved);
    g.resize(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = gram(solved, order[i]);
    delta = IntMatrix(m, m);
    delta_abs_sum = 0;
    g_abs_sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      g_abs_sum += abs(g[i]);
      for (std::size_t j = 0; j < m; ++j) {
        delta(i, j) = g[i] * g[j] - a * gram(order[i], order[j]);
        delta_abs_sum += abs(delta(i, j));
      }
    }
  }

  bool fits_i64(long box) const {
    const Int limit = Int(1) << 60;
    return delta_abs_sum * box * box < limit && g_abs_sum * box < limit && abs(a) < limit;
  }

  // Calls emit(prefix, t) for every root t with |t| <= box of every prefix in
  // [0, box] x [-box, box]^(m-1).
  template <class Z>
  void scan(long box, const std::function<void(const std::vector<long>&, const Int&)>& emit) const {
    const std::size_t m = g.size();
    std::vector<Z> dz(m * m), gz(m);
    for (std::size_t i = 0; i < m; ++i) {
      gz[i] = from_int<Z>(g[i]);
      for (std::size_t j = 0; j < m; ++j) dz[i * m + j] = from_int<Z>(delta(i, j));
    }
    const Z az = from_int<Z>(a);
    const std::size_t last = m - 1;
    std::vector<long> y(m, 0);

    std::function<void(std::size_t)> outer = [&](std::size_t idx) {
      if (idx < last) {
        const long lo = idx == 0 ? 0 : -box;
        for (long v = lo; v <= box; ++v) {
          y[idx] = v;
          outer(idx + 1);
        }
        return;
      }
      const long lo = last == 0 ? 0 : -box;
      y[last] = lo;
      Z cur = 0, cross = 0, h = 0;
      for (std::size_t i = 0; i < m; ++i) {
        h += gz[i] * Z(y[i]);
        for (std::size_t j = 0; j < m; ++j) cur += dz[i * m + j] * Z(y[i]) * Z(y[j]);
      }
      for (std::size_t j = 0; j < last; ++j) cross += dz[last * m + j] * Z(y[j]);
      const Z dll = dz[last * m + last];
      Z step = dll * Z(2 * lo + 1) + Z(2) * cross;
      const Z two_dll = Z(2) * dll;
      const Z gl = gz[last];
      Z root;
      for (long v = lo; v <= box; ++v) {
        if (exact_sqrt(cur, root)) {
          for (int sign : {1, -1}) {
            if (sign < 0 && root == 0) break;
            Z num = -h + (sign > 0 ? root : Z(-root));
            if (num % az != 0) continue;
            Int t = to_int(Z(num / az));
            if (abs(t) > box) continue;
            y[last] = v;
            emit(y, t);
          }
        }
        cur += step;
        step += two_dll;
        h += gl;
      }
    };
    outer(0);
  }
};

}  // namespace

bool witness_precedes(const IntVector& a, const IntVector& b) {
  const Int na = max_norm(a), nb = max_norm(b);
  if (na != nb) return na < nb;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] == b[i]) continue;
    const Int ua = abs(a[i]), ub = abs(b[i]);
    if (ua != ub) return ua < ub;
    return a[i] > 0;
  }
  return false;
}

std::optional<IntVector> find_integer_zero(const QuadraticForm& q, long height) {
  if (height < 1) throw DomainError("find_integer_zero: height must be >= 1");
  const IntMatrix gram = clear_denominators(q.gram());
  const std::size_t n = gram.rows();

  std::size_t solved = n;
  for (std::size_t i = n; i-- > 0;)
    if (gram(i, i) != 0) {
      solved = i;
      break;
    }
  // With an all-zero diagonal every basis vector is a zero.
  if (solved == n) return find_integer_zero_exhaustive(q, 1);

  const LastCoordinateSolver solver(gram, solved);
  BestZero best(q);
  auto emit = [&](const std::vector<long>& prefix, const Int& t) {
    IntVector v(n);
    for (std::size_t i = 0; i < prefix.size(); ++i) v[solver.order[i]] = prefix[i];
    v[solver.order.back()] = t;
    bool nonzero = t != 0;
    for (long c : prefix) nonzero = nonzero || c != 0;
    if (nonzero) best.offer(v);
  };

  for (long box = 1;; box = std::min(height, 2 * box)) {
    const double steps = (box + 1.0) * std::pow(2.0 * box + 1.0, static_cast<double>(n - 2));
    if (steps > kFastScanBudget) {
      throw BudgetExceeded("find_integer_zero: search box too large at height " + std::to_string(box));
    }
    if (solver.fits_i64(box)) {
      solver.scan<std::int64_t>(box, emit);
    } else {
      solver.scan<Int>(box, emit);
    }
    if (best.best() || box == height) return best.best();
  }
}

std::optional<IntVector> find_integer_zero_exhaustive(const QuadraticForm& q, long height) {
  if (height < 1) throw DomainError("find_integer_zero_exhaustive: height must be >= 1");
  const std::size_t n = q.dimension();
  if (std::pow(2.0 * height + 1.0, static_cast<double>(n)) > kExhaustiveBudget) {
    throw BudgetExceeded("find_integer_zero_exhaustive: box too large");
  }
  const IntMatrix gram = clear_denominators(q.gram());
  BestZero best(q);
  IntVector x(n, Int(-height));
  for (;;) {
    bool nonzero = false;
    for (const Int& c : x) nonzero = nonzero || c != 0;
    if (nonzero) {
      Int s = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += gram(i, j) * x[i] * x[j];
      if (s == 0) best.offer(x);
    }
    std::size_t i = 0;
    while (i < n && x[i] == height) x[i++] = -height;
    if (i == n) break;
    ++x[i];
  }
  return best.best();
}

unsigned default_precision(const QuadraticForm& q, const Int& p) {
  const Int det = determinant(clear_denominators(q.gram()));
  if (det == 0) throw DegenerateError("default_precision: degenerate form");
  return static_cast<unsigned>(2 * vp(Int(4 * abs(det)), p) + 3);
}

namespace {

class HenselTree {
 public:
  HenselTree(const IntMatrix& gram, const Int& p, unsigned k, long budget)
      : gram_(gram), p_(p), k_(k), budget_(budget), n_(gram.rows()) {}

  bool run() {
    IntVector x(n_);
    for (std::size_t pivot = 0; pivot < n_; ++pivot) {
      for (Int& c : x) c = 0;
      x[pivot] = 1;
      // Coordinates before the pivot are divisible by p, the rest are free
      // residues mod p.
      for (;;) {
        tick();
        if (mpz_divisible_p(value(x).get_mpz_t(), p_.get_mpz_t()) && visit(x, 1, pivot)) {
          return true;
        }
        std::size_t i = pivot + 1;
        while (i < n_ && x[i] == p_ - 1) x[i++] = 0;
        if (i >= n_) break;
        ++x[i];
      }
    }
    return false;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) throw BudgetExceeded("local_solubility_search: node budget exhausted");
  }

  Int value(const IntVector& x) const {
    Int s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      Int row = 0;
      for (std::size_t j = 0; j < n_; ++j) row += gram_(i, j) * x[j];
      s += row * x[i];
    }
    return s;
  }

  // Invariant: q(x) = 0 mod p^j, x primitive with x[pivot] = 1.
  bool visit(const IntVector& x, unsigned j, std::size_t pivot) {
    tick();
    if (j >= k_) return true;

    long v = -1;
    for (std::size_t i = 0; i < n_; ++i) {
      Int grad = 0;
      for (std::size_t c = 0; c < n_; ++c) grad += gram_(i, c) * x[c];
      grad *= 2;
      if (grad == 0) continue;
      const long vi = vp(grad, p_);
      if (v < 0 || vi < v) v = vi;
    }
    if (v < 0) return true;  // x is in the kernel, so q(x) = 0 exactly
    if (static_cast<long>(j) >= 2 * v + 1) return true;

    // Here grad = 0 mod p, so q(x + p^j t) = q(x) mod p^(j+1) for every t:
    // either every child survives or none does.
    Int pj;
    mpz_pow_ui(pj.get_mpz_t(), p_.get_mpz_t(), j + 1);
    if (!mpz_divisible_p(value(x).get_mpz_t(), pj.get_mpz_t())) return false;
    mpz_divexact(pj.get_mpz_t(), pj.get_mpz_t(), p_.get_mpz_t());

    IntVector digits(n_, Int(0));
    IntVector child = x;
    for (;;) {
      if (visit(child, j + 1, pivot)) return true;
      std::size_t i = 0;
      for (; i < n_; ++i) {
        if (i == pivot) continue;
        if (digits[i] + 1 < p_) {
          ++digits[i];
          child[i] += pj;
          break;
        }
        child[i] -= digits[i] * pj;
        digits[i] = 0;
      }
      if (i == n_) return false;
    }
  }

  const IntMatrix& gram_;
  Int p_;
  unsigned k_;
  long budget_;
  std::size_t n_;
  long nodes_ = 0;
};

}  // namespace

bool local_solubility_search(const QuadraticForm& q, const Int& p, unsigned k, long node_budget) {
  if (!is_prime(p)) throw DomainError("local_solubility_search: p must be prime");
  if (k < 1) throw DomainError("local_solubility_search: precision must be >= 1");
  return HenselTree(clear_denominators(q.gram()), p, k, node_budget).run();
}

CrosscheckReport crosscheck(const IntMatrix& gram, const CrosscheckOptions& options) {
  if (!validate_k3(gram).passed()) {
    throw DomainError("crosscheck: gram matrix is not admissible");
  }
  const QuadraticForm q(gram);
  CrosscheckReport report;
  report.engine = is_isotropic_global(q, GlobalIsotropyOptions{0});
  const bool engine_aniso = is_anisotropic(report.engine);

  const CaseMatch match = match_case(gram);
  report.case_id = match.case_id;
  if (match.matched()) {
    const ConditionReport cond = check_case_condition(match);
    report.lemma_anisotropic = cond.holds;
    report.lemma_internally_consistent = cond.internally_consistent;
    if (!cond.internally_consistent) {
      report.disagreements.push_back("case condition: Hilbert-symbol test and elementary test disagree");
    }
    if (cond.holds != engine_aniso) {
      report.disagreements.push_back(std::string("case condition says ") +
                                     (cond.holds ? "anisotropic" : "isotropic") +
                                     " but the invariant engine says " +
                                     (engine_aniso ? "anisotropic" : "isotropic"));
    }
  }

  report.zero_height = options.zero_height;
  if (options.zero_height > 0) {
    try {
      report.zero = find_integer_zero(q, options.zero_height);
      report.zero_search = report.zero ? ZeroSearchOutcome::Found : ZeroSearchOutcome::NotFound;
    } catch (const BudgetExceeded&) {
      report.zero_search = ZeroSearchOutcome::Skipped;
    }
  }
  if (report.zero) {
    if (engine_aniso) {
      report.disagreements.push_back("zero search found an integer zero but the invariant engine says anisotropic");
    } else {
      std::get<Isotropic>(report.engine).witness = report.zero;
    }
    if (report.lemma_anisotropic.value_or(false)) {
      report.disagreements.push_back("zero search found an integer zero but the case condition says anisotropic");
    }
  }

  for (const Place& v : critical_places(q)) {
    if (v.is_infinite()) continue;
    LocalAgreement row{v, is_isotropic_local(q, v), std::nullopt, default_precision(q, v.p())};
    try {
      row.search = local_solubility_search(q, v.p(), row.precision, options.local_node_budget);
    } catch (const BudgetExceeded&) {
    }
    if (!row.agrees()) {
      report.disagreements.push_back("local search at p = " + v.to_string() +
                                     " disagrees with the local invariants");
    }
    report.local.push_back(std::move(row));
  }
  return report;
}

}  // namespace k3zd
