#pragma once

// Decision procedure for integral Zariski decompositions on K3 surfaces:
// admissibility of a candidate Neron-Severi intersection matrix, dispatch to
// one of the six canonical shapes, the arithmetic condition attached to each
// shape, and a cross-checked final answer.
//
// Lattice matrices hold full intersection numbers (e.g. 4); the shape
// parameters are halves of the off-diagonal entries (e.g. m = 2).

#include <optional>
#include <string>
#include <vector>

#include "k3zd/matrix.hpp"
#include "k3zd/oracle.hpp"
#include "k3zd/zariski.hpp"

namespace k3zd {

struct Check {
  std::string id;
  bool passed = false;
  std::string detail;
  std::string basis;  // the fact the check rests on
};

struct Admissibility {
  std::vector<Check> checks;

  bool passed() const;
  std::vector<std::string> failures() const;
};

/// Independent checks: 2 <= rho <= 4, diagonal -2, off-diagonal in
/// {0, 4, 6, 8, ...}, signature (1, rho - 1) and nondegenerate, even.
/// Throws DomainError on a non-square or non-symmetric matrix.
Admissibility validate_k3(const IntMatrix& gram);

struct CaseMatch {
  int case_id = 0;                       // 1..6, 0 when no shape matches
  std::vector<std::size_t> permutation;  // canonical position i <- original index
  std::vector<std::string> parameter_names;
  IntVector parameters;

  bool matched() const { return case_id != 0; }
  /// The half-entry Gram (diagonal -1) of the canonical shape.
  IntMatrix half_gram() const;
};

CaseMatch match_case(const IntMatrix& gram);

struct Quantity {
  std::string name;
  Int value;
};

/// The condition evaluated at one candidate prime.
struct CandidateRow {
  Int prime;
  int symbol = 1;                 // the Hilbert symbol the condition tests
  std::optional<bool> d_square;   // shapes 5 and 6 only
  bool satisfied = false;
};

struct ConditionReport {
  bool holds = false;
  std::vector<Int> certificate_primes;  // increasing
  std::vector<Quantity> quantities;
  std::vector<CandidateRow> candidates;
  bool internally_consistent = true;
  std::vector<std::string> notes;
};

/// Throws DomainError when the match is empty.
ConditionReport check_case_condition(const CaseMatch& match);

/// The shape's condition at a single odd prime (shapes 2, 3, 5, 6).
std::optional<CandidateRow> condition_at_prime(const CaseMatch& match, const Int& p);

enum class Answer { D1, NotD1, Inconsistent };

std::string to_string(Answer a);

/// Verification of an externally claimed certificate prime.
struct ClaimCheck {
  Int prime;
  std::optional<bool> condition_at_prime;  // absent when the shape has no prime-wise condition
  bool engine_anisotropic_at_prime = false;
  bool reconciled = false;
};

struct DecideOptions {
  CrosscheckOptions crosscheck;
  /// Height for the bounded Zariski-denominator sweep; negative disables it.
  long corroboration_height = 6;
  std::optional<Int> claimed_certificate;
};

struct K3Verdict {
  IntMatrix gram;
  Admissibility admissibility;
  std::optional<CaseMatch> match;
  std::optional<ConditionReport> condition;
  std::optional<CrosscheckReport> crosscheck;
  std::optional<NumThmReport> numthm;
  std::optional<Int> max_denominator;
  std::string corroboration_error;
  std::optional<ClaimCheck> claim;
  Answer answer = Answer::NotD1;
  std::vector<std::string> reasons;
  std::vector<std::string> caveats;

  /// Condition certificates, or the engine's anisotropy place when the
  /// shape's condition names none.
  std::vector<Int> certificate_primes() const;
};

K3Verdict decide_d1(const IntMatrix& gram, const DecideOptions& options = {});

struct SearchFilters {
  std::optional<int> case_id;
  bool only_d1 = false;
  DecideOptions decide = [] {
    DecideOptions o;
    o.crosscheck.zero_height = 30;
    return o;
  }();
};

struct CatalogRow {
  IntMatrix gram;
  int case_id = 0;
  Answer answer = Answer::NotD1;
  std::vector<Int> certificate_primes;
  bool strongly_primitive = false;
};

/// Every admissible Gram matrix with half-entries in {0} U [2, max_half_entry],
/// one per basis-permutation class (the representative with the
/// lexicographically smallest upper triangle), in enumeration order.
std::vector<CatalogRow> search_lattices(int rho, long max_half_entry, const SearchFilters& filters = {});

}  // namespace k3zd
