#pragma once

// JSON and CSV renderings of the library's results. Integers that fit in 64
// bits are JSON numbers, larger ones are decimal strings; non-integral
// rationals are "n/d" strings.

#include <json.hpp>
#include <string>
#include <vector>

#include "k3zd/classify.hpp"
#include "k3zd/quadform.hpp"
#include "k3zd/zariski.hpp"

namespace k3zd::report {

using Json = nlohmann::ordered_json;

Json number(const Int& n);
Json number(const Rat& x);
Json vector_json(const IntVector& v);
Json vector_json(const RatVector& v);
Json matrix_json(const IntMatrix& m);
Json matrix_json(const RatMatrix& m);

/// Signature, discriminant, local invariants at the critical places,
/// isotropy verdict with witness or certificate place.
Json form_report(const QuadraticForm& q, long witness_height);

Json verdict_json(const K3Verdict& v);

Json zariski_json(const SurfaceLattice& lattice, const IntVector& d, const ZariskiDecomposition& z);

/// Rows are "r1;r2;..." with space-separated entries inside a row.
std::string packed_gram(const IntMatrix& g);
std::string catalog_csv(const std::vector<CatalogRow>& rows);

}  // namespace k3zd::report
