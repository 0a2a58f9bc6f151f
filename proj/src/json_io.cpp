#include "kine/json_io.hpp"

namespace kine {

using nlohmann::json;

json to_json(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  json f = json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (const auto& t : alg.basis_bracket(a, b))
        f.push_back({{"a", a}, {"b", b}, {"c", t.index}, {"val", to_string(t.value)}});
  return {{"dim", n}, {"labels", alg.labels()}, {"f", f}};
}

namespace {

Rational rational_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(where + ": " + e.what());
  }
  throw MalformedInput(where + ": expected a rational given as a string \"p/q\" or an integer");
}

std::size_t index_from_json(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_number_unsigned()) throw MalformedInput(where + ": expected a nonnegative integer index");
  auto i = v.get<std::size_t>();
  if (i >= n) throw MalformedInput(where + ": index " + std::to_string(i) + " out of range");
  return i;
}

}  // namespace

LieAlgebra algebra_from_json(const json& j, bool check_jacobi) {
  if (!j.is_object()) throw MalformedInput("structure constants: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned()) throw MalformedInput("missing or invalid field 'dim'");
  const std::size_t n = j["dim"].get<std::size_t>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw MalformedInput("'labels' must be an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw MalformedInput("'labels' must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
    if (labels.size() != n) throw MalformedInput("'labels' has " + std::to_string(labels.size()) + " entries, expected " + std::to_string(n));
  }
  if (!j.contains("f") || !j["f"].is_array()) throw MalformedInput("missing or invalid field 'f'");
  Tensor3 f(n);
  std::size_t k = 0;
  for (const auto& e : j["f"]) {
    const std::string where = "f[" + std::to_string(k++) + "]";
    if (!e.is_object() || !e.contains("a") || !e.contains("b") || !e.contains("c") || !e.contains("val"))
      throw MalformedInput(where + ": expected an object with keys a, b, c, val");
    std::size_t a = index_from_json(e["a"], n, where + ".a");
    std::size_t b = index_from_json(e["b"], n, where + ".b");
    std::size_t c = index_from_json(e["c"], n, where + ".c");
    if (a >= b) throw MalformedInput(where + ": entries must have a < b");
    Rational v = rational_from_json(e["val"], where + ".val");
    f(a, b, c) = v;
    f(b, a, c) = -v;
  }
  return check_jacobi ? LieAlgebra(std::move(f), std::move(labels)) : LieAlgebra::unchecked(std::move(f), std::move(labels));
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw MalformedInput("expected an array of rationals");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], "entry " + std::to_string(i)));
  return v;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw MalformedInput("expected an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw MalformedInput("matrix rows have unequal lengths");
  return Matrix::from_rows(rows, cols);
}

}  // namespace kine
