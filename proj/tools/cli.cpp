#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "k3zd/classify.hpp"
#include "k3zd/errors.hpp"
#include "k3zd/hilbert.hpp"
#include "k3zd/selfcheck.hpp"
#include "report.hpp"

namespace k3zd {
namespace {

using report::Json;

constexpr int kUsage = 1;
constexpr int kInvalidInput = 2;
constexpr int kInconsistent = 3;

constexpr std::uint64_t kSweepSeed = 20240611;

struct InputError : DomainError {
  using DomainError::DomainError;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Rat entry(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw InputError("entries must be integers or \"n/d\" strings, got " + j.dump());
}

RatMatrix rat_matrix(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw InputError("\"gram\" must be a non-empty array of rows");
  const std::size_t n = rows.size();
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw InputError("\"gram\" must be a square array of rows");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rows[i][j]);
  }
  if (!m.is_symmetric()) throw InputError("\"gram\" is not symmetric");
  return m;
}

IntMatrix int_matrix(const Json& rows) {
  const RatMatrix m = rat_matrix(rows);
  IntMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InputError("lattice entries must be integers");
      g(i, j) = m(i, j).get_num();
    }
  return g;
}

QuadraticForm load_form(const std::string& path) {
  const Json j = load_json(path);
  if (!j.is_object()) throw InputError("expected a JSON object with \"diag\" or \"gram\"");
  if (j.contains("diag")) {
    const Json& d = j["diag"];
    if (!d.is_array()) throw InputError("\"diag\" must be an array");
    std::vector<Rat> coeffs;
    for (const Json& x : d) coeffs.push_back(entry(x));
    return QuadraticForm::diagonal(coeffs);
  }
  if (j.contains("gram")) return QuadraticForm(rat_matrix(j["gram"]));
  throw InputError("expected a JSON object with \"diag\" or \"gram\"");
}

SurfaceLattice load_lattice(const std::string& path) {
  const Json j = load_json(path);
  if (!j.is_object() || !j.contains("gram")) throw InputError("expected a JSON object with \"gram\"");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw InputError("\"labels\" must be an array of strings");
    for (const Json& l : j["labels"]) {
      if (!l.is_string()) throw InputError("\"labels\" must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return SurfaceLattice(int_matrix(j["gram"]), std::move(labels));
}

IntVector parse_divisor(const std::string& text) {
  IntVector d;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) d.push_back(parse_int(item));
  if (d.empty()) throw InputError("empty divisor");
  return d;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_hilbert(const std::string& a_text, const std::string& b_text, const std::string& place_text, bool table,
                std::ostream& out) {
  const Rat a = parse_rat(a_text), b = parse_rat(b_text);
  if (a == 0 || b == 0) throw InputError("hilbert symbol arguments must be nonzero");
  const Place v = parse_place(place_text);
  const int s = hilbert_symbol(a, b, v);
  out << (s > 0 ? "+1" : "-1") << '\n';
  if (table) {
    const ProductFormulaReport r = product_formula_check(a, b);
    for (const PlaceSymbol& row : r.table) {
      out << std::left << std::setw(8) << row.place.to_string() << (row.symbol > 0 ? "+1" : "-1") << '\n';
    }
    out << std::left << std::setw(8) << "product" << (r.product > 0 ? "+1" : "-1") << '\n';
  }
  return 0;
}

int cmd_selfcheck(std::ostream& out) {
  bool ok = true;
  for (const SelfcheckRow& row : regression_battery()) {
    ok = ok && row.passed;
    out << (row.passed ? "PASS  " : "FAIL  ") << row.name << ": " << row.actual;
    if (!row.passed) out << " (expected " << row.expected << ")";
    out << '\n';
  }
  const ProductFormulaSweep sweep = product_formula_sweep(10000, 500, kSweepSeed);
  const bool sweep_ok = sweep.failures == 0;
  ok = ok && sweep_ok;
  out << (sweep_ok ? "PASS  " : "FAIL  ") << "product formula: " << sweep.pairs - sweep.failures << "/" << sweep.pairs
      << " pairs\n";
  for (const auto& [a, b] : sweep.failing) out << "      failing pair " << to_string(a) << ", " << to_string(b) << '\n';
  return ok ? 0 : kInconsistent;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert symbols, quadratic forms and Zariski denominators of K3 Picard lattices"};
  app.name("k3zd");
  app.require_subcommand(1);

  std::function<int()> action;

  std::string a_text, b_text, place_text;
  bool table = false;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (A,B) at PLACE (a prime or inf)");
  hilbert->add_option("A", a_text, "integer or n/d")->required();
  hilbert->add_option("B", b_text, "integer or n/d")->required();
  hilbert->add_option("PLACE", place_text, "prime or inf")->required();
  hilbert->add_flag("--table", table, "also print every critical place and the product");
  hilbert->callback([&] { action = [&] { return cmd_hilbert(a_text, b_text, place_text, table, out); }; });

  std::string file;
  long height = 500;
  auto* analyze = app.add_subcommand("analyze", "Invariants and isotropy of a quadratic form");
  analyze->add_option("FILE", file, "JSON with \"diag\" or \"gram\"")->required();
  analyze->add_option("--height", height, "witness search height")->check(CLI::NonNegativeNumber);
  analyze->callback([&] {
    action = [&] {
      print_json(out, report::form_report(load_form(file), height));
      return 0;
    };
  });

  std::string claim_text;
  auto* classify = app.add_subcommand("classify", "Decide d(X) = 1 for a Picard lattice");
  classify->add_option("FILE", file, "JSON with \"gram\" (full intersection numbers)")->required();
  classify->add_option("--height", height, "zero search height for the cross-check")->check(CLI::NonNegativeNumber);
  classify->add_option("--claim-prime", claim_text, "verify an externally claimed certificate prime");
  classify->callback([&] {
    action = [&] {
      const SurfaceLattice lattice = load_lattice(file);
      DecideOptions opts;
      opts.crosscheck.zero_height = height;
      if (!claim_text.empty()) opts.claimed_certificate = parse_int(claim_text);
      const K3Verdict v = decide_d1(lattice.gram(), opts);
      print_json(out, report::verdict_json(v));
      return v.answer == Answer::Inconsistent ? kInconsistent : 0;
    };
  });

  std::string divisor_text;
  auto* zariski = app.add_subcommand("zariski", "Zariski decomposition of an effective divisor");
  zariski->add_option("FILE", file, "JSON with \"gram\" and optional \"labels\"")->required();
  zariski->add_option("--divisor", divisor_text, "coefficients a1,a2,... on the curves")->required();
  zariski->callback([&] {
    action = [&] {
      const SurfaceLattice lattice = load_lattice(file);
      const IntVector d = parse_divisor(divisor_text);
      if (d.size() != lattice.rank()) throw InputError("divisor length does not match the lattice rank");
      print_json(out, report::zariski_json(lattice, d, zariski_decompose(lattice, d)));
      return 0;
    };
  });

  int rho = 0;
  long max_entry = 0;
  int case_filter = 0;
  bool only_d1 = false;
  long search_height = 30;
  std::string out_path;
  auto* search = app.add_subcommand("search", "Catalog admissible Picard lattices");
  search->add_option("--rho", rho, "Picard number")->required()->check(CLI::Range(2, 4));
  search->add_option("--max-entry", max_entry, "largest half-entry")->required()->check(CLI::Range(2L, 1000L));
  search->add_option("--case", case_filter, "keep only this shape")->check(CLI::Range(1, 6));
  search->add_flag("--only-d1", only_d1, "keep only D1 rows");
  search->add_option("--height", search_height, "zero search height for each cross-check")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--out", out_path, "write the CSV here instead of stdout");
  search->callback([&] {
    action = [&] {
      SearchFilters f;
      if (case_filter) f.case_id = case_filter;
      f.only_d1 = only_d1;
      f.decide.crosscheck.zero_height = search_height;
      const std::string csv = report::catalog_csv(search_lattices(rho, max_entry, f));
      if (out_path.empty()) {
        out << csv;
      } else {
        std::ofstream file_out(out_path, std::ios::binary);
        if (!file_out) throw InputError("cannot write '" + out_path + "'");
        file_out << csv;
      }
      return 0;
    };
  });

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the regression battery and the product formula sweep");
  selfcheck->callback([&] { action = [&] { return cmd_selfcheck(out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    return action();
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace k3zd
