#include "doctest.h"
#include "kine/cli.hpp"
#include "kine/json_io.hpp"
#include "kine/klein.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kine;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("kine_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string rhs(const json& row, const std::string& bracket) {
  for (const auto& b : row["brackets"])
    if (b["bracket"] == bracket) return b["rhs"];
  return "";
}

const json& row_named(const json& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r["name"] == name) return r;
  throw std::runtime_error("no row " + name);
}

}  // namespace

TEST_CASE("polynomial rendering and fitting") {
  CHECK(render_polynomial({1, 0, 1}, "χ") == "1+χ^2");
  CHECK(render_polynomial({0, 2}, "χ") == "2χ");
  CHECK(render_polynomial({1, 1}, "γ") == "1+γ");
  CHECK(render_polynomial({0, -1}, "ε") == "-ε");
  CHECK(render_polynomial({-1, frac(1, 2)}, "γ") == "-1+(1/2)γ");
  CHECK(render_polynomial({}, "γ") == "0");
  auto p = fit_polynomial({0, 1, 2}, {1, 2, 5});
  CHECK(p == std::vector<Rational>{1, 0, 1});
  CHECK_THROWS(fit_polynomial({1, 1}, {0, 0}));
}

TEST_CASE("table row counts") {
  for (std::size_t d : {3, 4}) {
    auto klas = tables_json("klas", d);
    CHECK(klas["rows"].size() == 9);
    auto barg = tables_json("bargmann", d);
    CHECK(barg["rows"].size() == 6);
    auto klein = tables_json("klein", d);
    REQUIRE(klein["sections"].size() == 4);
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (const auto& s : klein["sections"]) {
      sizes.push_back(s["rows"].size());
      total += s["rows"].size();
    }
    CHECK(total == 16);
    CHECK(sizes == std::vector<std::size_t>{3, 3, 6, 4});
    CHECK(klein["sections"][3]["class"] == "Carrollian");
  }
}

TEST_CASE("generated table entries") {
  auto klas = tables_json("klas", 4)["rows"];
  CHECK(rhs(row_named(klas, "s"), "[H,B]").empty());
  CHECK(rhs(row_named(klas, "g"), "[H,B]") == "-P");
  CHECK(rhs(row_named(klas, "n0"), "[H,B]") == "B + P");
  CHECK(rhs(row_named(klas, "n+_γ"), "[H,B]") == "γ B");
  CHECK(rhs(row_named(klas, "n-_χ"), "[H,P]") == "-B + χ P");
  CHECK(rhs(row_named(klas, "so(d+1,1)"), "[B,P]") == "H + L");
  const auto& so = row_named(klas, "so(d,2) / so(d+2)");
  CHECK(rhs(so, "[H,B]") == "-ε P");
  CHECK(rhs(so, "[H,P]") == "ε B");
  CHECK(rhs(so, "[P,P]") == "ε L");

  auto barg = tables_json("bargmann", 3)["rows"];
  const auto& bm = row_named(barg, "b-_χ");
  CHECK(rhs(bm, "[H,P]") == "(1+χ^2) B + 2χ P");
  CHECK(rhs(bm, "[H,Z]") == "2χ Z");
  CHECK(bm["extends"] == "n-_χ");
  const auto& bp = row_named(barg, "b+_γ");
  CHECK(rhs(bp, "[H,P]") == "γ B + (1+γ) P");
  CHECK(rhs(bp, "[H,Z]") == "(1+γ) Z");
  CHECK(rhs(row_named(barg, "b0"), "[H,Z]") == "2 Z");
  CHECK(rhs(row_named(barg, "ghat"), "[B,P]") == "Z");

  auto klein = tables_json("klein", 3)["sections"];
  const auto& lightcone = row_named(klein[3]["rows"], "lightcone");
  CHECK(lightcone["pair"] == "(so(d+1,1), iso(d))");
  CHECK(rhs(lightcone, "[H,B]") == "B");
  CHECK(rhs(lightcone, "[B,P]") == "H + L");
  CHECK(rhs(row_named(klein[1]["rows"], "hyperbolic"), "[P,P]") == "L");
}

TEST_CASE("tables command output and exit codes") {
  auto a = run({"tables", "--which", "klas", "--dim", "4", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(json::parse(a.out)["schema"] == "kine/1");
  auto b = run({"tables", "--which", "klas", "--dim", "4", "--format", "json"});
  CHECK(a.out == b.out);
  auto md = run({"tables", "--which", "klein", "--dim", "3"});
  CHECK(md.code == 0);
  CHECK(md.out.find("## Carrollian") != std::string::npos);
  CHECK(run({"tables", "--which", "klein", "--dim", "2"}).code == 2);
  CHECK(run({"tables", "--which", "nope"}).code == 2);
  CHECK(run({"tables", "--which", "klas", "--format", "xml"}).code == 2);
  CHECK(run({"tables"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("check suites") {
  for (auto [suite, dims] : std::vector<std::pair<std::string, std::string>>{
           {"jacobi", "3..4"}, {"klein", "3"}, {"spencer", "3..5"}, {"geometry", "3"}}) {
    CAPTURE(suite);
    auto r = run({"check", "--suite", suite, "--dims", dims});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["status"] == "ok");
    CHECK(j["failures"].empty());
    CHECK(run({"check", "--suite", suite, "--dims", dims}).out == r.out);
  }
  auto sp = json::parse(run({"check", "--suite", "spencer", "--dims", "4"}).out);
  REQUIRE(sp["results"].size() == 3);
  CHECK(sp["results"][1]["kind"] == "galilean");
  CHECK(sp["results"][1]["ker"] == 10);
  CHECK(sp["results"][2]["coker"] == 10);
  auto geo = json::parse(run({"check", "--suite", "geometry"}).out);
  CHECK(geo["results"][0]["class"] == "TotallyGeodesic");
  CHECK(geo["results"][1]["class"] == "TotallyUmbilical");
  CHECK(run({"check", "--suite", "jacobi", "--dims", "2..4"}).code == 2);
  CHECK(run({"check", "--suite", "jacobi", "--dims", "5..4"}).code == 2);
  CHECK(run({"check", "--suite", "jacobi", "--dims", "x"}).code == 2);
}

TEST_CASE("parse_dims") {
  CHECK(parse_dims("3..6") == std::pair<std::size_t, std::size_t>{3, 6});
  CHECK(parse_dims("4") == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK_THROWS_AS(parse_dims("3.."), UsageError);
  CHECK_THROWS_AS(parse_dims("-1..2"), UsageError);
}

TEST_CASE("classify a scrambled Galilei algebra") {
  Matrix a{{2, 1}, {1, 1}};
  LieAlgebra base = build("g", 3).alg;
  LieAlgebra mixed = change_basis(base, kinematical_basis_change(3, a, frac(-3, 2)));
  REQUIRE_FALSE(mixed == base);
  auto path = write_temp("galilei.json", to_json(mixed).dump());
  auto r = run({"classify", "--input", path, "--mode", "algebra"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["results"]["tag"] == "g");
  CHECK(j["results"]["verified"] == true);
  REQUIRE_FALSE(j["results"]["isomorphism"].is_null());
  Matrix iso = matrix_from_json(j["results"]["isomorphism"]);
  CHECK(change_basis(mixed, iso) == base);
}

TEST_CASE("classify Klein pairs") {
  auto lc = run({"classify", "--input", write_temp("lightcone.json", R"({"tag":"lightcone","d":3})"), "--mode", "klein"});
  CHECK(lc.code == 0);
  auto j = json::parse(lc.out)["results"];
  CHECK(j["reductive"] == false);
  CHECK(j["class"] == "Carrollian");

  // Minkowski from raw structure constants with h = span{L, B}
  LieAlgebra k = build_klein("minkowski", 3).k;
  json doc;
  doc["algebra"] = to_json(k);
  doc["h"] = json::array();
  KinematicalBasis kb(3);
  for (std::size_t i = 0; i < kb.rotation_count() + 3; ++i) doc["h"].push_back(to_json(unit_vector(kb.dim(), i)));
  auto mk = run({"classify", "--input", write_temp("minkowski.json", doc.dump()), "--mode", "klein"});
  CHECK(mk.code == 0);
  auto m = json::parse(mk.out)["results"];
  CHECK(m["class"] == "Lorentzian");
  CHECK(m["symmetric"] == true);

  // span{B1, P1} is not a subalgebra: [B1, P1] = H
  json bad;
  bad["algebra"] = to_json(build("so(d+1,1)", 3).alg);
  bad["h"] = {to_json(unit_vector(kb.dim(), kb.B(0))), to_json(unit_vector(kb.dim(), kb.P(0)))};
  auto br = run({"classify", "--input", write_temp("bad_pair.json", bad.dump()), "--mode", "klein"});
  CHECK(br.code == 1);
  CHECK(json::parse(br.out)["status"] == "fail");
}

TEST_CASE("classify torsion data") {
  auto nc = run({"classify", "--input",
                 write_temp("ttnc.json", R"({"d":3,"tau":[1,0,0,0],"dtau":[[0,1,0,0],[-1,0,0,0],[0,0,0,0],[0,0,0,0]]})"),
                 "--mode", "nc"});
  CHECK(nc.code == 0);
  CHECK(json::parse(nc.out)["results"]["class"] == "TTNC");
  auto tnc = run({"classify", "--input",
                  write_temp("tnc.json", R"({"tau":[1,0,0,0],"dtau":[[0,0,0,0],[0,0,1,0],[0,-1,0,0],[0,0,0,0]]})"),
                  "--mode", "nc"});
  CHECK(json::parse(tnc.out)["results"]["class"] == "TNC");
  auto car = run({"classify", "--input",
                  write_temp("tu.json", R"({"K":[["1/2",0,0],[0,"1/2",0],[0,0,"1/2"]],"h":[[1,0,0],[0,1,0],[0,0,1]]})"),
                  "--mode", "carroll"});
  CHECK(car.code == 0);
  CHECK(json::parse(car.out)["results"]["class"] == "TotallyUmbilical");
}

TEST_CASE("classify exit codes") {
  auto bad = run({"classify", "--input",
                  write_temp("sym.json", R"({"tau":[1,0,0,0],"dtau":[[0,1,0,0],[1,0,0,0],[0,0,0,0],[0,0,0,0]]})"),
                  "--mode", "nc"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("antisymmetric") != std::string::npos);
  CHECK(run({"classify", "--input", write_temp("broken.json", "{"), "--mode", "nc"}).code == 2);
  CHECK(run({"classify", "--input", write_temp("missing.json", R"({"tau":[1,0]})"), "--mode", "nc"}).code == 2);
  CHECK(run({"classify", "--input", write_temp("badval.json", R"({"tau":["x"],"dtau":[[0]]})"), "--mode", "nc"}).code ==
        2);
  CHECK(run({"classify", "--input", "/nonexistent/file.json", "--mode", "nc"}).code == 2);
  CHECK(run({"classify", "--input", write_temp("ok.json", "{}"), "--mode", "nope"}).code == 2);
  auto pd = run({"classify", "--input", write_temp("pd.json", R"({"K":[[1,0],[0,1]],"h":[[1,0],[0,0]]})"), "--mode",
                 "carroll"});
  CHECK(pd.code == 1);
  json notlie = to_json(build("g", 3).alg);
  notlie["f"].push_back({{"a", 0}, {"b", 1}, {"c", 9}, {"val", "1"}});
  CHECK(run({"classify", "--input", write_temp("notlie.json", notlie.dump()), "--mode", "algebra"}).code == 1);
}

TEST_CASE("export and samples") {
  auto e = run({"export", "--tag", "n-", "--dim", "3", "--chi", "2"});
  CHECK(e.code == 0);
  CHECK(algebra_from_json(json::parse(e.out)) == build("n-", 3, {std::nullopt, Rational(2)}).alg);
  auto eb = run({"export", "--tag", "b+", "--gamma", "1/3", "--bargmann"});
  CHECK(algebra_from_json(json::parse(eb.out)) == build_bargmann("b+", 3, {frac(1, 3), std::nullopt}).alg);
  CHECK(run({"export", "--tag", "n+", "--gamma", "2"}).code == 2);
  CHECK(run({"export", "--tag", "zz"}).code == 2);

  auto s = run({"samples", "--kind", "lightcone", "--dim", "3", "--count", "5"});
  CHECK(s.code == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 6);
  CHECK(s.out.find("TotallyUmbilical") != std::string::npos);
  CHECK(run({"samples", "--kind", "lightcone", "--dim", "3", "--count", "5"}).out == s.out);
  auto q = run({"samples", "--kind", "sphere", "--count", "2"});
  CHECK(q.out.find("(4,0)") != std::string::npos);
  CHECK(run({"samples", "--kind", "cylinder"}).code == 2);
}
