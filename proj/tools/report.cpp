#include "report.hpp"

#include <sstream>

#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"

namespace k3zd::report {
namespace {

Json places_json(const std::vector<Int>& primes) {
  Json a = Json::array();
  for (const Int& p : primes) a.push_back(number(p));
  return a;
}

Json strings(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const std::string& s : v) a.push_back(s);
  return a;
}

const char* zero_search_name(ZeroSearchOutcome o) {
  switch (o) {
    case ZeroSearchOutcome::Found:
      return "found";
    case ZeroSearchOutcome::NotFound:
      return "not_found";
    case ZeroSearchOutcome::Skipped:
      return "skipped";
  }
  return "skipped";
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json verdict_summary(const IsotropyVerdict& v) {
  Json j;
  if (const auto* a = std::get_if<Anisotropic>(&v)) {
    j["verdict"] = "anisotropic";
    j["certificate"] = a->place.to_string();
    j["d_square"] = a->invariants.d_square;
    j["epsilon"] = a->invariants.epsilon;
  } else {
    const auto& iso = std::get<Isotropic>(v);
    j["verdict"] = "isotropic";
    j["witness"] = iso.witness ? vector_json(*iso.witness) : Json(nullptr);
  }
  return j;
}

}  // namespace

Json number(const Int& n) {
  if (n.fits_slong_p()) return Json(n.get_si());
  return Json(n.get_str());
}

Json number(const Rat& x) {
  if (x.get_den() == 1) return number(x.get_num());
  return Json(to_string(x));
}

Json vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(number(x));
  return a;
}

Json vector_json(const RatVector& v) {
  Json a = Json::array();
  for (const Rat& x : v) a.push_back(number(x));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    a.push_back(row);
  }
  return a;
}

Json matrix_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    a.push_back(row);
  }
  return a;
}

Json form_report(const QuadraticForm& q, long witness_height) {
  Json j;
  j["dimension"] = q.dimension();
  j["gram"] = matrix_json(q.gram());
  const Signature s = signature(q);
  j["signature"] = {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
  const Rat d = discriminant(q);
  j["discriminant"] = number(d);
  j["discriminant_square_class"] = number(square_class(d));
  const DiagonalForm diag = diagonalize(q);
  j["diagonal"] = vector_json(RatVector(diag.coefficients));

  Json local = Json::array();
  for (const Place& v : critical_places(q)) {
    const LocalInvariants inv = local_invariants(q, v);
    local.push_back({{"place", v.to_string()},
                     {"d_square", inv.d_square},
                     {"epsilon", inv.epsilon},
                     {"isotropic", is_isotropic_local(q, v)}});
  }
  j["local"] = local;
  const IsotropyVerdict verdict = is_isotropic_global(q, GlobalIsotropyOptions{witness_height});
  const Json summary = verdict_summary(verdict);
  for (const auto& [key, value] : summary.items()) j[key] = value;
  j["witness_height"] = witness_height;
  return j;
}

Json verdict_json(const K3Verdict& v) {
  Json j;
  j["gram"] = matrix_json(v.gram);
  j["answer"] = to_string(v.answer);
  j["certificate_primes"] = places_json(v.certificate_primes());

  Json checks = Json::array();
  for (const Check& c : v.admissibility.checks)
    checks.push_back({{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}, {"basis", c.basis}});
  j["admissibility"] = checks;

  if (v.match && v.match->matched()) {
    Json params;
    for (std::size_t i = 0; i < v.match->parameters.size(); ++i)
      params[v.match->parameter_names[i]] = number(v.match->parameters[i]);
    Json perm = Json::array();
    for (std::size_t i : v.match->permutation) perm.push_back(i);
    j["case"] = {{"id", v.match->case_id}, {"parameters", params}, {"permutation", perm}};
  } else {
    j["case"] = nullptr;
  }

  if (v.condition) {
    const ConditionReport& c = *v.condition;
    Json quantities;
    for (const Quantity& q : c.quantities) quantities[q.name] = number(q.value);
    Json candidates = Json::array();
    for (const CandidateRow& row : c.candidates) {
      Json r{{"prime", number(row.prime)}, {"symbol", row.symbol}};
      if (row.d_square) r["d_square"] = *row.d_square;
      r["satisfied"] = row.satisfied;
      candidates.push_back(r);
    }
    j["condition"] = {{"holds", c.holds},
                      {"certificate_primes", places_json(c.certificate_primes)},
                      {"quantities", quantities},
                      {"candidates", candidates},
                      {"internally_consistent", c.internally_consistent},
                      {"notes", strings(c.notes)}};
  } else {
    j["condition"] = nullptr;
  }

  if (v.crosscheck) {
    const CrosscheckReport& cc = *v.crosscheck;
    Json local = Json::array();
    for (const LocalAgreement& a : cc.local) {
      local.push_back({{"place", a.place.to_string()},
                       {"engine_isotropic", a.engine},
                       {"search_isotropic", optional_bool(a.search)},
                       {"precision", a.precision},
                       {"agrees", a.agrees()}});
    }
    j["anisotropy"] = verdict_summary(cc.engine);
    j["crosscheck"] = {{"outcome", cc.consistent() ? "Consistent" : "Inconsistent"},
                       {"lemma_anisotropic", optional_bool(cc.lemma_anisotropic)},
                       {"engine_anisotropic", is_anisotropic(cc.engine)},
                       {"zero_search", zero_search_name(cc.zero_search)},
                       {"zero_height", cc.zero_height},
                       {"zero", cc.zero ? vector_json(*cc.zero) : Json(nullptr)},
                       {"local", local},
                       {"disagreements", strings(cc.disagreements)}};
  } else {
    j["anisotropy"] = nullptr;
    j["crosscheck"] = nullptr;
  }

  Json corr;
  if (v.numthm) {
    corr["numthm_divisibility"] = v.numthm->cond_a;
    corr["numthm_orthogonality"] = v.numthm->cond_b;
    corr["numthm_violations"] = strings(v.numthm->violations);
  }
  corr["max_denominator"] = v.max_denominator ? number(*v.max_denominator) : Json(nullptr);
  if (!v.corroboration_error.empty()) corr["error"] = v.corroboration_error;
  j["corroboration"] = corr;

  if (v.claim) {
    j["claimed_certificate"] = {{"prime", number(v.claim->prime)},
                                {"condition_at_prime", optional_bool(v.claim->condition_at_prime)},
                                {"engine_anisotropic_at_prime", v.claim->engine_anisotropic_at_prime},
                                {"reconciled", v.claim->reconciled}};
  }
  j["reasons"] = strings(v.reasons);
  j["caveats"] = strings(v.caveats);
  return j;
}

Json zariski_json(const SurfaceLattice& lattice, const IntVector& d, const ZariskiDecomposition& z) {
  Json support = Json::array();
  for (std::size_t i : z.support) support.push_back(lattice.labels()[i]);
  return Json{{"labels", lattice.labels()},
              {"divisor", vector_json(d)},
              {"P", vector_json(z.positive)},
              {"N", vector_json(z.negative)},
              {"support", support},
              {"denominator", number(z.denominator)},
              {"iterations", z.iterations}};
}

std::string packed_gram(const IntMatrix& g) {
  std::string out;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j) out += ' ';
      out += g(i, j).get_str();
    }
  }
  return out;
}

std::string catalog_csv(const std::vector<CatalogRow>& rows) {
  std::ostringstream out;
  out << "canonical_gram,rho,case,verdict,certificate_primes,strongly_primitive\n";
  for (const CatalogRow& r : rows) {
    std::string certs;
    for (std::size_t i = 0; i < r.certificate_primes.size(); ++i)
      certs += (i ? ";" : "") + r.certificate_primes[i].get_str();
    out << packed_gram(r.gram) << ',' << r.gram.rows() << ',' << r.case_id << ',' << to_string(r.answer) << ','
        << certs << ',' << (r.strongly_primitive ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace k3zd::report
