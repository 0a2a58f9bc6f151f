#pragma once

// JSON structure-constant format:
//   {"dim": n, "labels": [...], "f": [{"a": i, "b": j, "c": k, "val": "p/q"}, ...]}
// listing only nonzero entries with a < b.

#include "kine/liealg.hpp"

#include <json.hpp>

namespace kine {

class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const LieAlgebra& alg);
/// Throws MalformedInput for structural problems, NotALieAlgebra if the constants fail validation.
LieAlgebra algebra_from_json(const nlohmann::json& j, bool check_jacobi = true);

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace kine
