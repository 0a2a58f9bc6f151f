#include "kine/cli.hpp"

#include "kine/connections.hpp"
#include "kine/json_io.hpp"
#include "kine/klein.hpp"
#include "kine/realizations.hpp"
#include "kine/spencer.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace kine {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Bracket tables read from constructed algebras.

const std::vector<std::string> kBracketOrder{"[H,B]", "[H,P]", "[B,B]", "[B,P]", "[P,P]", "[H,Z]"};
const std::vector<std::string> kGeneratorOrder{"B", "P", "H", "L", "Z"};

using BracketValues = std::map<std::string, std::map<std::string, Rational>>;

std::string generator_symbol(const KinematicalBasis& kb, std::size_t index) {
  if (index == kb.B(0)) return "B";
  if (index == kb.P(0)) return "P";
  if (index == kb.H()) return "H";
  if (index == kb.L(0, 1)) return "L";
  if (kb.has_z() && index == kb.Z()) return "Z";
  throw std::logic_error("bracket is not of rotation-equivariant form");
}

BracketValues read_brackets(const LieAlgebra& alg, const KinematicalBasis& kb) {
  BracketValues out;
  auto add = [&](const std::string& name, std::size_t a, std::size_t b) {
    for (const auto& t : alg.basis_bracket(a, b)) out[name][generator_symbol(kb, t.index)] += t.value;
  };
  add("[H,B]", kb.H(), kb.B(0));
  add("[H,P]", kb.H(), kb.P(0));
  add("[B,B]", kb.B(0), kb.B(1));
  add("[B,P]", kb.B(0), kb.P(0));
  add("[B,P]", kb.B(0), kb.P(1));
  add("[P,P]", kb.P(0), kb.P(1));
  if (kb.has_z()) add("[H,Z]", kb.H(), kb.Z());
  return out;
}

struct Family {
  std::string symbol;
  std::string range;
  std::vector<Rational> fit;
  std::vector<Rational> check;
};

struct TableRow {
  std::string name;
  std::string tag;
  std::optional<Family> family;
  std::function<LieAlgebra(const std::optional<Rational>&)> build;
  std::function<std::string(const std::optional<Rational>&)> extra;
};

using Polys = std::map<std::string, std::map<std::string, std::vector<Rational>>>;

Rational evaluate(const std::vector<Rational>& poly, const Rational& x) {
  Rational v = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

Polys bracket_polynomials(const TableRow& row, const KinematicalBasis& kb) {
  Polys out;
  if (!row.family) {
    for (const auto& [name, terms] : read_brackets(row.build(std::nullopt), kb))
      for (const auto& [g, v] : terms)
        if (sgn(v) != 0) out[name][g] = {v};
    return out;
  }
  const Family& f = *row.family;
  std::vector<BracketValues> fit, check;
  for (const auto& x : f.fit) fit.push_back(read_brackets(row.build(x), kb));
  for (const auto& x : f.check) check.push_back(read_brackets(row.build(x), kb));
  std::map<std::string, std::vector<std::string>> keys;
  for (const auto& v : fit)
    for (const auto& [name, terms] : v)
      for (const auto& [g, c] : terms)
        if (std::find(keys[name].begin(), keys[name].end(), g) == keys[name].end()) keys[name].push_back(g);
  auto lookup = [](const BracketValues& v, const std::string& name, const std::string& g) {
    auto it = v.find(name);
    if (it == v.end()) return Rational(0);
    auto jt = it->second.find(g);
    return jt == it->second.end() ? Rational(0) : jt->second;
  };
  for (const auto& [name, gens] : keys) {
    for (const auto& g : gens) {
      std::vector<Rational> ys;
      for (const auto& v : fit) ys.push_back(lookup(v, name, g));
      auto poly = fit_polynomial(f.fit, ys);
      for (std::size_t i = 0; i < f.check.size(); ++i)
        if (evaluate(poly, f.check[i]) != lookup(check[i], name, g))
          throw std::logic_error("bracket " + name + " of " + row.tag + " is not polynomial in " + f.symbol);
      while (!poly.empty() && sgn(poly.back()) == 0) poly.pop_back();
      if (!poly.empty()) out[name][g] = poly;
    }
  }
  return out;
}

bool is_monomial(const std::vector<Rational>& poly) {
  return std::count_if(poly.begin(), poly.end(), [](const Rational& c) { return sgn(c) != 0; }) <= 1;
}

std::string render_term(const std::vector<Rational>& poly, const std::string& symbol, const std::string& gen) {
  std::string c = render_polynomial(poly, symbol);
  if (c == "1") return gen;
  if (c == "-1") return "-" + gen;
  if (!is_monomial(poly)) return "(" + c + ") " + gen;
  return c + " " + gen;
}

std::string render_rhs(const std::map<std::string, std::vector<Rational>>& terms, const std::string& symbol) {
  std::string out;
  for (const auto& g : kGeneratorOrder) {
    auto it = terms.find(g);
    if (it == terms.end()) continue;
    std::string t = render_term(it->second, symbol, g);
    if (out.empty())
      out = t;
    else if (t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out;
}

json row_json(const TableRow& row, const KinematicalBasis& kb) {
  json j;
  j["name"] = row.name;
  j["tag"] = row.tag;
  std::string symbol;
  if (row.family) {
    symbol = row.family->symbol;
    j["parameter"] = {{"symbol", symbol}, {"range", row.family->range}};
  } else {
    j["parameter"] = nullptr;
  }
  Polys polys = bracket_polynomials(row, kb);
  json brackets = json::array();
  for (const auto& name : kBracketOrder) {
    auto it = polys.find(name);
    if (it == polys.end()) continue;
    json terms = json::array();
    for (const auto& g : kGeneratorOrder) {
      auto jt = it->second.find(g);
      if (jt != it->second.end()) terms.push_back({{"generator", g}, {"coefficient", render_polynomial(jt->second, symbol)}});
    }
    brackets.push_back({{"bracket", name}, {"rhs", render_rhs(it->second, symbol)}, {"terms", terms}});
  }
  j["brackets"] = brackets;
  if (row.extra) j["extends"] = row.extra(row.family ? std::optional<Rational>(row.family->fit.front()) : std::nullopt);
  return j;
}

FamilyParams family_params(const std::string& symbol, const std::optional<Rational>& x) {
  FamilyParams p;
  if (!x) return p;
  if (symbol == "γ") p.gamma = *x;
  if (symbol == "χ") p.chi = *x;
  return p;
}

std::vector<TableRow> klas_rows(std::size_t d) {
  const Family gamma{"γ", "γ ∈ [-1,1]", {-1, 0, 1}, {frac(-1, 2), frac(1, 2)}};
  const Family chi{"χ", "χ ≥ 0", {0, 1, 2}, {3}};
  const Family eps{"ε", "ε = ±1", {-1, 1}, {}};
  auto plain = [d](const std::string& name, const std::string& tag) {
    return TableRow{name, tag, std::nullopt, [d, tag](const std::optional<Rational>&) { return build(tag, d).alg; }, {}};
  };
  auto family = [d](const std::string& name, const std::string& tag, const Family& f) {
    return TableRow{name, tag, f,
                    [d, tag, sym = f.symbol](const std::optional<Rational>& x) {
                      return build(tag, d, family_params(sym, x)).alg;
                    },
                    {}};
  };
  auto signed_row = [d](const std::string& name, const std::string& tag, const Family& f, bool iso) {
    return TableRow{name, tag, f,
                    [d, iso](const std::optional<Rational>& x) {
                      int e = static_cast<int>(x->get_num().get_si());
                      return iso ? build_iso(d, e).alg : build_so(d, e).alg;
                    },
                    {}};
  };
  return {plain("s", "s"),
          plain("g", "g"),
          plain("n0", "n0"),
          family("n+_γ", "n+", gamma),
          family("n-_χ", "n-", chi),
          plain("c", "c"),
          signed_row("iso(d,1) / iso(d+1)", "iso(d,1)/iso(d+1)", eps, true),
          plain("so(d+1,1)", "so(d+1,1)"),
          signed_row("so(d,2) / so(d+2)", "so(d,2)/so(d+2)", eps, false)};
}

std::string tag_with_params(const std::string& tag, const FamilyParams& p, const std::string& symbol) {
  if (!symbol.empty()) return tag + "_" + symbol;
  if (p.gamma) return tag + "_{γ=" + to_string(*p.gamma) + "}";
  if (p.chi) return tag + "_{χ=" + to_string(*p.chi) + "}";
  return tag;
}

std::vector<TableRow> bargmann_table_rows(std::size_t d) {
  const Family gamma{"γ", "γ ∈ (-1,1)", {frac(-1, 2), 0, frac(1, 2)}, {frac(1, 4)}};
  const Family chi{"χ", "χ > 0", {1, 2, 3}, {frac(1, 2)}};
  std::vector<TableRow> rows;
  for (const auto& tag : bargmann_tags()) {
    std::optional<Family> f;
    if (tag == "b+") f = gamma;
    if (tag == "b-") f = chi;
    std::string sym = f ? f->symbol : "";
    std::string name = f ? tag + "_" + sym : tag;
    auto builder = [d, tag, sym](const std::optional<Rational>& x) {
      return build_bargmann(tag, d, family_params(sym, x));
    };
    rows.push_back({name, tag, f, [builder](const std::optional<Rational>& x) { return builder(x).alg; },
                    [builder, sym](const std::optional<Rational>& x) {
                      auto [qt, qp] = bargmann_quotient_tag(builder(x));
                      return tag_with_params(qt, qp, sym);
                    }});
  }
  return rows;
}

std::vector<std::pair<GeometryClass, std::vector<std::pair<KleinRow, TableRow>>>> klein_sections(std::size_t d) {
  const Family gamma{"γ", "γ ∈ (-1,1)", {frac(-1, 2), 0, frac(1, 2)}, {frac(1, 4)}};
  const Family chi{"χ", "χ > 0", {1, 2, 3}, {frac(1, 2)}};
  std::vector<std::pair<GeometryClass, std::vector<std::pair<KleinRow, TableRow>>>> out;
  for (const auto& row : klein_rows()) {
    if (out.empty() || out.back().first != row.section) out.push_back({row.section, {}});
    std::optional<Family> f;
    if (row.parameter == "gamma") f = gamma;
    if (row.parameter == "chi") f = chi;
    std::string sym = f ? f->symbol : "";
    std::string tag = row.tag;
    TableRow tr{row.name, row.tag, f,
                [d, tag, sym](const std::optional<Rational>& x) { return build_klein(tag, d, family_params(sym, x)).k; },
                {}};
    out.back().second.push_back({row, std::move(tr)});
  }
  return out;
}

std::vector<std::string> present_columns(const json& rows) {
  std::vector<std::string> cols;
  for (const auto& name : kBracketOrder)
    for (const auto& r : rows) {
      bool found = false;
      for (const auto& b : r["brackets"])
        if (b["bracket"] == name) found = true;
      if (found) {
        cols.push_back(name);
        break;
      }
    }
  return cols;
}

void markdown_table(std::ostream& os, const json& rows, bool with_pair, const std::string& extra_column) {
  auto cols = present_columns(rows);
  os << "| Name |";
  if (with_pair) os << " Klein pair |";
  for (const auto& c : cols) os << " " << c << " |";
  if (!extra_column.empty()) os << " " << extra_column << " |";
  os << " Parameter |\n|---|";
  if (with_pair) os << "---|";
  for (std::size_t i = 0; i < cols.size(); ++i) os << "---|";
  if (!extra_column.empty()) os << "---|";
  os << "---|\n";
  for (const auto& r : rows) {
    os << "| " << r["name"].get<std::string>() << " |";
    if (with_pair) os << " " << r["pair"].get<std::string>() << " |";
    for (const auto& c : cols) {
      std::string cell;
      for (const auto& b : r["brackets"])
        if (b["bracket"] == c) cell = c + " = " + b["rhs"].get<std::string>();
      os << " " << cell << " |";
    }
    if (!extra_column.empty()) os << " " << r["extends"].get<std::string>() << " |";
    os << " " << (r["parameter"].is_null() ? std::string() : r["parameter"]["range"].get<std::string>()) << " |\n";
  }
}

// ---------------------------------------------------------------------------
// Input helpers.

json params_json(const FamilyParams& p) {
  json j = json::object();
  if (p.gamma) j["gamma"] = to_string(*p.gamma);
  if (p.chi) j["chi"] = to_string(*p.chi);
  return j;
}

const json& require_field(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError("missing field '" + key + "'");
  return j.at(key);
}

std::size_t read_size(const json& j, const std::string& key) {
  const json& v = require_field(j, key);
  if (!v.is_number_unsigned()) throw UsageError("field '" + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const MalformedInput& e) {
    throw UsageError(where + ": " + e.what());
  }
}

FamilyParams read_params(const json& j) {
  FamilyParams p;
  auto get = [&](const std::string& key) -> std::optional<Rational> {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::invalid_argument& e) {
      throw UsageError(key + ": " + e.what());
    }
    throw UsageError(key + ": expected a rational given as a string \"p/q\" or an integer");
  };
  p.gamma = get("gamma");
  p.chi = get("chi");
  return p;
}

std::size_t infer_d(std::size_t dim) {
  for (std::size_t d = 1; d <= 64; ++d)
    if (d * (d - 1) / 2 + 2 * d + 1 == dim) return d;
  throw std::invalid_argument("dimension " + std::to_string(dim) + " is not that of a kinematical Lie algebra");
}

Report classify_algebra(const json& input, Report r) {
  const json& doc = input.contains("algebra") ? input.at("algebra") : input;
  LieAlgebra alg = located("algebra", [&] { return algebra_from_json(doc, false); });
  if (!jacobiator(LieAlgebra::unchecked(alg.structure_constants(), alg.labels())).is_lie) {
    r.failures.push_back("algebra: structure constants violate the Jacobi identity");
    return r;
  }
  std::size_t d = input.contains("d") ? read_size(input, "d") : infer_d(alg.dim());
  Identification id = identify(LieAlgebra(alg.structure_constants(), alg.labels()), d);
  json j;
  j["d"] = d;
  j["found"] = id.found;
  j["tag"] = id.tag;
  j["params"] = params_json(id.params);
  j["verified"] = id.verified;
  j["isomorphism"] = id.isomorphism ? to_json(*id.isomorphism) : json(nullptr);
  j["invariants"] = {{"derived_dim", id.invariants.derived_dim},
                     {"center_dim", id.invariants.center_dim},
                     {"killing_rank", id.invariants.killing_rank},
                     {"ad_h_type", id.invariants.ad_h_type}};
  j["notes"] = id.notes;
  r.results = j;
  if (!id.found) r.failures.push_back("algebra: no catalogue row matches the input");
  return r;
}

Report classify_klein(const json& input, Report r) {
  KleinPair p;
  if (input.contains("tag")) {
    if (!input.at("tag").is_string()) throw UsageError("field 'tag' must be a string");
    p = build_klein(input.at("tag").get<std::string>(), read_size(input, "d"), read_params(input));
  } else {
    LieAlgebra alg = located("algebra", [&] { return algebra_from_json(require_field(input, "algebra")); });
    const json& hj = require_field(input, "h");
    if (!hj.is_array()) throw UsageError("h: expected an array of vectors");
    std::vector<Vector> span;
    for (std::size_t i = 0; i < hj.size(); ++i) {
      Vector v = located("h[" + std::to_string(i) + "]", [&] { return vector_from_json(hj[i]); });
      if (v.size() != alg.dim())
        throw std::invalid_argument("h[" + std::to_string(i) + "]: expected " + std::to_string(alg.dim()) +
                                    " components");
      span.push_back(std::move(v));
    }
    p = make_klein_pair(alg, Subspace(alg.dim(), span));
  }
  auto eff = is_effective(p);
  auto red = reductive_complement(p);
  auto sig = invariant_signature(p);
  json j;
  if (!p.tag.empty()) j["tag"] = p.tag;
  j["effective"] = eff.effective;
  j["reductive"] = red.reductive;
  j["symmetric"] = red.symmetric;
  j["class"] = to_string(sig.cls);
  j["invariants"] = {{"V", sig.dim_v},
                     {"V*", sig.dim_v_dual},
                     {"Sym2 V", sig.dim_sym2_v},
                     {"Sym2 V*", sig.dim_sym2_v_dual},
                     {"Wedge2 V*", sig.dim_wedge2_v_dual}};
  if (!red.reductive) j["witness"] = red.witness;
  r.results = j;
  return r;
}

Report classify_nc_input(const json& input, Report r) {
  Vector tau = located("tau", [&] { return vector_from_json(require_field(input, "tau")); });
  Matrix dtau = located("dtau", [&] { return matrix_from_json(require_field(input, "dtau")); });
  std::size_t d = input.contains("d") ? read_size(input, "d") : (tau.empty() ? 0 : tau.size() - 1);
  auto cls = classify_nc(tau, dtau, d);
  r.results = {{"d", d}, {"class", to_string(cls)}};
  return r;
}

Report classify_carroll_input(const json& input, Report r) {
  Matrix k = located("K", [&] { return matrix_from_json(require_field(input, "K")); });
  Matrix h = located("h", [&] { return matrix_from_json(require_field(input, "h")); });
  std::size_t d = input.contains("d") ? read_size(input, "d") : h.rows();
  auto cls = classify_carroll(k, h, d);
  r.results = {{"d", d}, {"class", to_string(cls)}};
  return r;
}

// ---------------------------------------------------------------------------
// Verification suites.

bool torsional(const std::string& tag) { return tag.rfind("torsional", 0) == 0; }

void check_jacobi(Report& r, std::size_t d) {
  std::vector<std::pair<std::string, std::function<LieAlgebra()>>> algebras;
  for (const auto& tag : kinematical_tags()) {
    if (tag == "n+") {
      for (Rational g : {Rational(-1), frac(-1, 2), Rational(0), frac(1, 2), Rational(1)})
        algebras.push_back({"n+ gamma=" + to_string(g), [=] { return build(tag, d, {g, std::nullopt}).alg; }});
    } else if (tag == "n-") {
      for (Rational c : {0, 1, 2})
        algebras.push_back({"n- chi=" + to_string(c), [=] { return build(tag, d, {std::nullopt, c}).alg; }});
    } else {
      algebras.push_back({tag, [=] { return build(tag, d).alg; }});
    }
  }
  for (const auto& row : klein_rows()) {
    std::vector<FamilyParams> ps{{}};
    if (row.parameter == "gamma") ps = {{frac(-1, 2), std::nullopt}, {0, std::nullopt}, {frac(1, 2), std::nullopt}};
    if (row.parameter == "chi") ps = {{std::nullopt, 1}, {std::nullopt, 2}};
    for (const auto& p : ps)
      algebras.push_back({"klein " + row.tag, [=, tag = row.tag] { return build_klein(tag, d, p).k; }});
  }
  for (const auto& tag : bargmann_tags()) {
    std::vector<FamilyParams> ps{{}};
    if (tag == "b+") ps = {{-1, std::nullopt}, {frac(-1, 2), std::nullopt}, {0, std::nullopt}, {frac(1, 2), std::nullopt}};
    if (tag == "b-") ps = {{std::nullopt, 0}, {std::nullopt, 1}, {std::nullopt, 2}};
    for (const auto& p : ps)
      algebras.push_back({"bargmann " + tag, [=] { return build_bargmann(tag, d, p).alg; }});
  }
  std::size_t violations = 0;
  for (const auto& [name, make] : algebras) {
    try {
      LieAlgebra alg = make();
      auto jac = jacobiator(LieAlgebra::unchecked(alg.structure_constants(), alg.labels()));
      if (!jac.is_lie) {
        ++violations;
        r.failures.push_back("jacobi d=" + std::to_string(d) + " " + name + ": Jacobi identity fails");
      }
    } catch (const std::exception& e) {
      ++violations;
      r.failures.push_back("jacobi d=" + std::to_string(d) + " " + name + ": " + e.what());
    }
  }
  r.results.push_back({{"d", d}, {"algebras", algebras.size()}, {"violations", violations}});
}

void check_klein(Report& r, std::size_t d) {
  for (const auto& row : klein_rows()) {
    auto p = build_klein(row.tag, d);
    bool eff = is_effective(p).effective;
    auto red = reductive_complement(p);
    auto cls = invariant_signature(p).cls;
    r.results.push_back({{"d", d},
                         {"tag", row.tag},
                         {"effective", eff},
                         {"reductive", red.reductive},
                         {"symmetric", red.symmetric},
                         {"class", to_string(cls)}});
    std::string where = "klein d=" + std::to_string(d) + " " + row.tag + ": ";
    bool lightcone = row.tag == "lightcone";
    if (!eff) r.failures.push_back(where + "not effective");
    if (red.reductive == lightcone) r.failures.push_back(where + "unexpected reductivity");
    if (red.symmetric != (!lightcone && !torsional(row.tag))) r.failures.push_back(where + "unexpected symmetry");
    if (cls != row.section) r.failures.push_back(where + "class " + to_string(cls) + ", expected " + to_string(row.section));
  }
}

void check_spencer(Report& r, std::size_t d) {
  for (auto kind : {StructureKind::Lorentzian, StructureKind::Galilean, StructureKind::Carrollian}) {
    auto rep = spencer_report(structure_algebra(kind, d));
    std::size_t expected = kind == StructureKind::Lorentzian ? 0
                           : kind == StructureKind::Galilean ? (d + 1) * d / 2
                                                              : d * (d + 1) / 2;
    r.results.push_back({{"d", d},
                         {"kind", to_string(kind)},
                         {"dim_hom_v_h", rep.dim_hom_v_h},
                         {"dim_hom_wedge2v_v", rep.dim_hom_wedge2v_v},
                         {"rank", rep.rank},
                         {"ker", rep.dim_ker},
                         {"coker", rep.dim_coker}});
    if (rep.dim_ker != expected || rep.dim_coker != expected)
      r.failures.push_back("spencer d=" + std::to_string(d) + " " + to_string(kind) + ": expected (ker, coker) = (" +
                           std::to_string(expected) + ", " + std::to_string(expected) + ")");
  }
}

void check_geometry(Report& r, std::size_t d) {
  const std::string at = " d=" + std::to_string(d);
  const std::pair<NullKind, CarrollTorsionClass> nulls[] = {
      {NullKind::Hyperplane, CarrollTorsionClass::TotallyGeodesic},
      {NullKind::Lightcone, CarrollTorsionClass::TotallyUmbilical},
      {NullKind::DeSitterCarroll, CarrollTorsionClass::TotallyGeodesic},
      {NullKind::AntiDeSitterCarroll, CarrollTorsionClass::TotallyGeodesic},
  };
  for (const auto& [kind, expected] : nulls) {
    auto nr = null_hypersurface(kind, d);
    auto cls = classify_hypersurface(nr.surface);
    auto cc = check_weak_carroll(nr.data, nr.surface.samples);
    double min_trace = cls.traces.empty() ? 0 : std::abs(cls.traces.front());
    for (double t : cls.traces) min_trace = std::min(min_trace, std::abs(t));
    std::string label = cls.cls ? to_string(*cls.cls) : "mixed";
    r.results.push_back({{"d", d},
                         {"surface", to_string(kind)},
                         {"class", label},
                         {"symmetric", cls.symmetric},
                         {"lie_verified", cls.lie_verified},
                         {"weak_carroll", cc.ok()}});
    std::string where = "geometry" + at + " " + to_string(kind) + ": ";
    if (cls.cls != expected) r.failures.push_back(where + "class " + label + ", expected " + to_string(expected));
    if (!cls.symmetric) r.failures.push_back(where + "B is not symmetric");
    if (!cls.lie_verified) r.failures.push_back(where + "Lie derivative of h differs from 2B");
    if (!cc.ok()) r.failures.push_back(where + "not a weak carrollian structure");
    if (kind == NullKind::Lightcone && !(min_trace > 1e-6)) r.failures.push_back(where + "trace of B vanishes");
  }
  for (auto kind : {QuadricKind::DeSitter, QuadricKind::AntiDeSitter, QuadricKind::Sphere, QuadricKind::Hyperbolic}) {
    auto q = quadric(kind, d, Rational(1));
    bool lorentzian = kind == QuadricKind::DeSitter || kind == QuadricKind::AntiDeSitter;
    Inertia expected = lorentzian ? Inertia{d, 1, 0} : Inertia{d + 1, 0, 0};
    bool ok = true;
    for (const auto& p : q.exact_samples) ok = ok && exact_induced_inertia(q.exact_metric, p) == expected;
    r.results.push_back({{"d", d},
                         {"surface", to_string(kind)},
                         {"signature", "(" + std::to_string(expected.positive) + "," +
                                           std::to_string(expected.negative) + ")"},
                         {"signature_ok", ok}});
    if (!ok) r.failures.push_back("geometry" + at + " " + to_string(kind) + ": wrong induced signature");
  }
  auto b = check_bundle_of_scales(bundle_of_scales(d));
  double worst = std::max({b.generator_error, b.metric_error, b.triangle_error, b.lightcone_residual});
  r.results.push_back({{"d", d}, {"surface", "bundle_of_scales"}, {"within_tolerance", worst < 1e-10}});
  if (!(worst < 1e-10)) r.failures.push_back("geometry" + at + " bundle of scales: carrollian data differ");
}

std::string join(const std::vector<std::string>& args) {
  std::string out = "kine";
  for (const auto& a : args) out += " " + a;
  return out;
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << "\n"; }

}  // namespace

// ---------------------------------------------------------------------------

json Report::to_json() const {
  return {{"schema", "kine/1"},
          {"command", command},
          {"status", ok() ? "ok" : "fail"},
          {"results", results},
          {"failures", failures}};
}

std::vector<Rational> fit_polynomial(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t n = xs.size();
  if (ys.size() != n || n == 0) throw std::invalid_argument("fit_polynomial needs matching nonempty samples");
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational p = 1;
    for (std::size_t k = 0; k < n; ++k, p *= xs[i]) v(i, k) = p;
  }
  auto c = rank(v) == n ? solve(v, Vector(ys.begin(), ys.end())) : std::nullopt;
  if (!c) throw std::invalid_argument("fit_polynomial needs distinct sample points");
  return std::vector<Rational>(c->begin(), c->end());
}

std::string render_polynomial(const std::vector<Rational>& coeffs, const std::string& symbol) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Rational& c = coeffs[k];
    if (sgn(c) == 0) continue;
    std::string term;
    if (k == 0) {
      term = to_string(c);
    } else {
      std::string power = k == 1 ? symbol : symbol + "^" + std::to_string(k);
      if (c == 1)
        term = power;
      else if (c == -1)
        term = "-" + power;
      else if (c.get_den() == 1)
        term = to_string(c) + power;
      else
        term = "(" + to_string(c) + ")" + power;
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += term;
    else
      out += "+" + term;
  }
  return out.empty() ? "0" : out;
}

json tables_json(const std::string& which, std::size_t d) {
  if (d < 3) throw OutOfScope("tables need d >= 3");
  json j;
  j["schema"] = "kine/1";
  j["table"] = which;
  j["d"] = d;
  if (which == "klas") {
    KinematicalBasis kb(d);
    json rows = json::array();
    for (const auto& row : klas_rows(d)) rows.push_back(row_json(row, kb));
    j["rows"] = rows;
  } else if (which == "bargmann") {
    KinematicalBasis kb(d, true);
    json rows = json::array();
    for (const auto& row : bargmann_table_rows(d)) rows.push_back(row_json(row, kb));
    j["rows"] = rows;
  } else if (which == "klein") {
    KinematicalBasis kb(d);
    json sections = json::array();
    for (const auto& [cls, rows] : klein_sections(d)) {
      json rj = json::array();
      for (const auto& [kr, tr] : rows) {
        json row = row_json(tr, kb);
        row["pair"] = kr.pair;
        rj.push_back(row);
      }
      sections.push_back({{"class", to_string(cls)}, {"rows", rj}});
    }
    j["sections"] = sections;
  } else {
    throw UsageError("unknown table '" + which + "'");
  }
  return j;
}

std::string cmd_tables(const std::string& which, std::size_t d, const std::string& format) {
  json j = tables_json(which, d);
  std::ostringstream os;
  if (format == "json") {
    write_json(os, j);
    return os.str();
  }
  if (format != "markdown") throw UsageError("unknown format '" + format + "'");
  if (which == "klein") {
    os << "# Kinematical Klein geometries, d = " << d << "\n";
    for (const auto& s : j["sections"]) {
      os << "\n## " << s["class"].get<std::string>() << "\n\n";
      markdown_table(os, s["rows"], true, "");
    }
  } else if (which == "klas") {
    os << "# Kinematical Lie algebras, d = " << d << "\n\n";
    markdown_table(os, j["rows"], false, "");
  } else {
    os << "# Generalised Bargmann algebras, d = " << d << "\n\n";
    markdown_table(os, j["rows"], false, "Quotient by Z");
  }
  return os.str();
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6)
      throw UsageError("malformed dimension range '" + text + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  auto dots = text.find("..");
  std::size_t lo, hi;
  if (dots == std::string::npos) {
    lo = hi = number(text);
  } else {
    lo = number(text.substr(0, dots));
    hi = number(text.substr(dots + 2));
  }
  if (lo > hi) throw UsageError("empty dimension range '" + text + "'");
  return {lo, hi};
}

Report cmd_check(const std::string& suite, std::size_t d_min, std::size_t d_max) {
  Report r;
  r.command = "check --suite " + suite + " --dims " + std::to_string(d_min) + ".." + std::to_string(d_max);
  std::function<void(Report&, std::size_t)> run;
  std::size_t lowest = 3;
  if (suite == "jacobi") {
    run = check_jacobi;
  } else if (suite == "klein") {
    run = check_klein;
  } else if (suite == "spencer") {
    run = check_spencer;
    lowest = 1;
  } else if (suite == "geometry") {
    run = check_geometry;
    lowest = 2;
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }
  if (d_min < lowest) throw UsageError("suite " + suite + " needs d >= " + std::to_string(lowest));
  for (std::size_t d = d_min; d <= d_max; ++d) run(r, d);
  return r;
}

Report cmd_classify(const json& input, const std::string& mode) {
  Report r;
  r.command = "classify --mode " + mode;
  r.results = json::object();
  if (!input.is_object()) throw UsageError("input: expected a JSON object");
  try {
    if (mode == "algebra") return classify_algebra(input, r);
    if (mode == "klein") return classify_klein(input, r);
    if (mode == "nc") return classify_nc_input(input, r);
    if (mode == "carroll") return classify_carroll_input(input, r);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    r.failures.push_back(mode + ": " + e.what());
    return r;
  }
  throw UsageError("unknown mode '" + mode + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kinematical Lie algebras, Klein geometries and their G-structures", "kine"};
  app.require_subcommand(1);

  std::string which, format = "markdown";
  std::size_t table_dim = 3;
  auto* tables = app.add_subcommand("tables", "Print a classification table generated from the constructors");
  tables->add_option("--which", which, "klas, klein or bargmann")->required()->check(CLI::IsMember({"klas", "klein", "bargmann"}));
  tables->add_option("--dim", table_dim, "Spatial dimension d >= 3")->check(CLI::Range(3, 64));
  tables->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

  std::string suite, dims;
  auto* check = app.add_subcommand("check", "Run a verification suite");
  check->add_option("--suite", suite, "jacobi, klein, spencer or geometry")
      ->required()
      ->check(CLI::IsMember({"jacobi", "klein", "spencer", "geometry"}));
  check->add_option("--dims", dims, "Dimension range such as 3..6");

  std::string input_path, mode;
  auto* classify = app.add_subcommand("classify", "Classify structure constants or tensor data from a JSON file");
  classify->add_option("--input", input_path, "JSON input file")->required();
  classify->add_option("--mode", mode, "algebra, klein, nc or carroll")
      ->required()
      ->check(CLI::IsMember({"algebra", "klein", "nc", "carroll"}));

  std::string tag, gamma, chi;
  std::size_t export_dim = 3;
  bool bargmann = false;
  auto* exp = app.add_subcommand("export", "Print the structure constants of a catalogue algebra");
  exp->add_option("--tag", tag, "Catalogue tag")->required();
  exp->add_option("--dim", export_dim, "Spatial dimension d >= 3")->check(CLI::Range(3, 64));
  exp->add_option("--gamma", gamma, "Family parameter gamma");
  exp->add_option("--chi", chi, "Family parameter chi");
  exp->add_flag("--bargmann", bargmann, "Look the tag up among the generalised Bargmann algebras");

  std::string kind;
  std::size_t sample_dim = 3, count = 16;
  unsigned seed = 0;
  auto* samples = app.add_subcommand("samples", "Print hypersurface samples as CSV");
  samples->add_option("--kind", kind, "Hypersurface kind")
      ->required()
      ->check(CLI::IsMember({"hyperplane", "lightcone", "dS_Carroll", "AdS_Carroll", "deSitter", "antiDeSitter",
                             "sphere", "hyperbolic"}));
  samples->add_option("--dim", sample_dim, "Spatial dimension")->check(CLI::Range(2, 16));
  samples->add_option("--count", count, "Number of samples")->check(CLI::Range(1, 100000));
  samples->add_option("--seed", seed, "Sample seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*tables) {
      out << cmd_tables(which, table_dim, format);
      return 0;
    }
    if (*check) {
      if (dims.empty()) dims = suite == "geometry" ? "3" : suite == "klein" ? "3..4" : suite == "spencer" ? "3..5" : "3..6";
      auto [lo, hi] = parse_dims(dims);
      Report r = cmd_check(suite, lo, hi);
      r.command = join(args);
      write_json(out, r.to_json());
      for (const auto& f : r.failures) err << "FAIL " << f << "\n";
      return r.exit_code();
    }
    if (*classify) {
      std::ifstream in(input_path);
      if (!in) throw UsageError("cannot read input file '" + input_path + "'");
      json input = json::parse(in, nullptr, false);
      if (input.is_discarded()) throw UsageError("input file '" + input_path + "' is not valid JSON");
      Report r = cmd_classify(input, mode);
      r.command = join(args);
      write_json(out, r.to_json());
      for (const auto& f : r.failures) err << "FAIL " << f << "\n";
      return r.exit_code();
    }
    if (*exp) {
      FamilyParams p;
      try {
        if (!gamma.empty()) p.gamma = parse_rational(gamma);
        if (!chi.empty()) p.chi = parse_rational(chi);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      try {
        LieAlgebra alg = bargmann ? build_bargmann(tag, export_dim, p).alg : build(tag, export_dim, p).alg;
        write_json(out, to_json(alg));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return 0;
    }
    if (*samples) {
      static const std::map<std::string, QuadricKind> quadrics{{"deSitter", QuadricKind::DeSitter},
                                                               {"antiDeSitter", QuadricKind::AntiDeSitter},
                                                               {"sphere", QuadricKind::Sphere},
                                                               {"hyperbolic", QuadricKind::Hyperbolic}};
      auto q = quadrics.find(kind);
      if (q != quadrics.end())
        write_samples_csv(out, quadric(q->second, sample_dim, Rational(1), count, seed).surface);
      else
        write_samples_csv(out, null_hypersurface(parse_null_kind(kind), sample_dim, 1, count, seed).surface);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace kine
