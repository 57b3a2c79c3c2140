#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace k3zd;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "k3zd");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "k3zd_test_cli";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

Json classify(const std::string& name, const std::string& gram, std::vector<std::string> extra = {}, int code = 0) {
  std::vector<std::string> args{"classify", write_file(name, "{\"gram\": " + gram + "}")};
  args.insert(args.end(), extra.begin(), extra.end());
  const Run r = run(args);
  REQUIRE_MESSAGE(r.code == code, r.err);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("hilbert") {
  CHECK(run({"hilbert", "7", "-1", "7"}).out == "-1\n");
  CHECK(run({"hilbert", "57", "3", "19"}).out == "-1\n");
  CHECK(run({"hilbert", "1", "5", "inf"}).out == "+1\n");
  CHECK(run({"hilbert", "-1/3", "-2/5", "inf"}).out == "-1\n");
  const Run t = run({"hilbert", "7", "-1", "7", "--table"});
  CHECK(t.code == 0);
  CHECK(t.out == "-1\ninf     +1\n2       -1\n7       -1\nproduct +1\n");
  CHECK(run({"hilbert", "7", "x", "7"}).code == 2);
  CHECK(run({"hilbert", "7", "0", "7"}).code == 2);
  CHECK(run({"hilbert", "7", "3", "9"}).code == 2);
  CHECK(run({"hilbert", "7", "3"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"search", "--rho", "7", "--max-entry", "3"}).code == 1);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("classify") != std::string::npos);
}

TEST_CASE("analyze") {
  const Run d7 = run({"analyze", write_file("d7.json", R"({"diag": [7, -1, -1]})")});
  REQUIRE(d7.code == 0);
  const Json a = Json::parse(d7.out);
  CHECK(a["verdict"] == "anisotropic");
  CHECK(a["certificate"] == "7");
  CHECK(a["discriminant"] == 7);

  const Json b = Json::parse(run({"analyze", write_file("x4y.json", R"({"diag": [1, -4]})")}).out);
  CHECK(b["verdict"] == "isotropic");
  CHECK(b["witness"] == Json::array({2, 1}));

  const Json c = Json::parse(
      run({"analyze", write_file("s5.json", R"({"gram": [[-1,0,6,2],[0,-1,7,2],[6,7,-1,9],[2,2,9,-1]]})")}).out);
  CHECK(c["verdict"] == "anisotropic");
  CHECK(c["certificate"] == "7");
  CHECK(c["d_square"] == true);
  CHECK(c["signature"]["positive"] == 1);

  const Json r = Json::parse(run({"analyze", write_file("rat.json", R"({"diag": ["1/2", "-9/2"]})")}).out);
  CHECK(r["verdict"] == "isotropic");
  CHECK(r["discriminant"] == "-9/4");

  CHECK(run({"analyze", write_file("bad.json", "{\"diag\": [1, ")}).code == 2);
  CHECK(run({"analyze", write_file("float.json", R"({"diag": [1.5, -1]})")}).code == 2);
  CHECK(run({"analyze", write_file("degen.json", R"({"gram": [[1,1],[1,1]]})")}).code == 2);
  CHECK(run({"analyze", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"analyze"}).code == 1);
}

TEST_CASE("classify") {
  const Json c1 = classify("c1.json", "[[-2,4],[4,-2]]");
  CHECK(c1["answer"] == "D1");
  CHECK(c1["case"]["id"] == 1);

  const Json c2 = classify("c2.json", "[[-2,0,4],[0,-2,4],[4,4,-2]]");
  CHECK(c2["answer"] == "D1");
  CHECK(c2["certificate_primes"] == Json::array({7}));
  CHECK(c2["crosscheck"]["outcome"] == "Consistent");

  const Json c3 = classify("c3.json", "[[-2,4,4],[4,-2,4],[4,4,-2]]", {"--claim-prime", "7"});
  CHECK(c3["answer"] == "D1");
  CHECK(c3["certificate_primes"] == Json::array({3}));
  CHECK(c3["claimed_certificate"]["reconciled"] == false);

  const Json nm = classify("nm.json", "[[-2,0,0],[0,-2,4],[0,4,-2]]");
  CHECK(nm["answer"] == "NotD1");
  CHECK(nm["case"].is_null());

  const Json s6 = classify("s6.json", "[[-2,4,6,6],[4,-2,6,4],[6,6,-2,4],[6,4,4,-2]]", {"--height", "20"});
  CHECK(s6["crosscheck"]["outcome"] == "Consistent");
  CHECK(s6["answer"] == "NotD1");

  const Json bad = classify("b1.json", "[[-2,2],[2,-2]]");
  CHECK(bad["answer"] == "NotD1");

  CHECK(run({"classify", write_file("asym.json", R"({"gram": [[-2,4],[6,-2]]})")}).code == 2);
  CHECK(run({"classify", write_file("frac.json", R"({"gram": [["1/2",4],[4,-2]]})")}).code == 2);
  CHECK(run({"classify", write_file("ragged.json", R"({"gram": [[-2,4],[4]]})")}).code == 2);
}

TEST_CASE("classify output is deterministic") {
  const std::string path = write_file("det.json", R"({"gram": [[-2,0,4],[0,-2,4],[4,4,-2]]})");
  CHECK(run({"classify", path}).out == run({"classify", path}).out);
}

TEST_CASE("zariski") {
  const std::string hc = write_file("hc.json", R"({"labels": ["H", "C"], "gram": [[2,1],[1,-2]]})");
  const Run r = run({"zariski", hc, "--divisor", "1,1"});
  REQUIRE(r.code == 0);
  const Json z = Json::parse(r.out);
  CHECK(z["N"] == Json::array({0, "1/2"}));
  CHECK(z["P"] == Json::array({1, "1/2"}));
  CHECK(z["denominator"] == 2);
  CHECK(z["support"] == Json::array({"C"}));

  const std::string k = write_file("k.json", R"({"gram": [[-2,4],[4,-2]]})");
  const Json z2 = Json::parse(run({"zariski", k, "--divisor", "3,1"}).out);
  CHECK(z2["N"] == Json::array({1, 0}));
  CHECK(z2["denominator"] == 1);
  const Json z3 = Json::parse(run({"zariski", k, "--divisor", "2,1"}).out);
  CHECK(z3["N"] == Json::array({0, 0}));

  CHECK(run({"zariski", k, "--divisor", "1"}).code == 2);
  CHECK(run({"zariski", k, "--divisor", "-1,2"}).code == 2);
  CHECK(run({"zariski", k}).code == 1);
}

TEST_CASE("search") {
  const Run r = run({"search", "--rho", "2", "--max-entry", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "canonical_gram,rho,case,verdict,certificate_primes,strongly_primitive\n"
        "-2 4;4 -2,2,1,D1,3,false\n"
        "-2 6;6 -2,2,1,D1,2,false\n");

  const Run c2 = run({"search", "--rho", "3", "--max-entry", "2", "--case", "2"});
  CHECK(c2.out.find("-2 0 4;0 -2 4;4 4 -2,3,2,D1,7,false") != std::string::npos);

  const std::string out = (std::filesystem::temp_directory_path() / "k3zd_test_cli" / "cat.csv").string();
  CHECK(run({"search", "--rho", "4", "--max-entry", "2", "--case", "4", "--out", out}).code == 0);
  std::ifstream in(out);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() ==
        "canonical_gram,rho,case,verdict,certificate_primes,strongly_primitive\n"
        "-2 0 0 4;0 -2 0 4;0 0 -2 4;4 4 4 -2,4,4,NotD1,,false\n");
}

TEST_CASE("selfcheck") {
  const Run r = run({"selfcheck"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("hilbert (-1,-1)_2") != std::string::npos);
  CHECK(r.out.find("23 = 4^a(8k-1)") != std::string::npos);
}
