#pragma once

// Command-line front end: generated tables, verification suites, classification
// of user-supplied data and sample export. Reports carry "schema": "kine/1".

#include "kine/catalog.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace kine {

/// Malformed command line or input document; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  nlohmann::json results = nlohmann::json::array();
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  int exit_code() const { return ok() ? 0 : 1; }
  nlohmann::json to_json() const;
};

/// Polynomial in one parameter with rational coefficients, lowest degree first.
std::string render_polynomial(const std::vector<Rational>& coeffs, const std::string& symbol);
/// Coefficients of the interpolating polynomial through (x_i, y_i).
std::vector<Rational> fit_polynomial(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// which ∈ {klas, klein, bargmann}; format ∈ {json, markdown}. Requires d >= 3.
std::string cmd_tables(const std::string& which, std::size_t d, const std::string& format);
nlohmann::json tables_json(const std::string& which, std::size_t d);

/// Parses "3..6" or "4".
std::pair<std::size_t, std::size_t> parse_dims(const std::string& text);

/// suite ∈ {jacobi, klein, spencer, geometry}.
Report cmd_check(const std::string& suite, std::size_t d_min, std::size_t d_max);

/// mode ∈ {algebra, klein, nc, carroll}. Throws UsageError for malformed documents.
Report cmd_classify(const nlohmann::json& input, const std::string& mode);

/// Entry point shared by the executable and the tests; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kine
