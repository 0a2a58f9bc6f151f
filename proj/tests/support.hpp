#pragma once

#include "kine/catalog.hpp"

#include <random>

namespace kine::testing {

inline Rational random_rational(std::mt19937& rng, int range = 3, int max_den = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, max_den);
  return frac(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937& rng, int range = 3, int max_den = 3) {
  while (true) {
    Rational r = random_rational(rng, range, max_den);
    if (sgn(r) != 0) return r;
  }
}

inline Matrix random_invertible(std::mt19937& rng, std::size_t n, int range = 3, int max_den = 3) {
  while (true) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = random_rational(rng, range, max_den);
    if (determinant(g) != 0) return g;
  }
}

struct CatalogRow {
  std::string tag;
  FamilyParams params;
};

/// Every row of the kinematical table, sampling the families at the given parameter values.
inline std::vector<CatalogRow> catalog_rows(const std::vector<Rational>& gammas, const std::vector<Rational>& chis) {
  std::vector<CatalogRow> rows;
  for (const auto& tag : kinematical_tags()) {
    if (tag == "n+") {
      for (const auto& g : gammas) rows.push_back({tag, {g, std::nullopt}});
    } else if (tag == "n-") {
      for (const auto& c : chis) rows.push_back({tag, {std::nullopt, c}});
    } else {
      rows.push_back({tag, {}});
    }
  }
  return rows;
}

}  // namespace kine::testing
