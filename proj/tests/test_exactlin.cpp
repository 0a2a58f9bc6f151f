#include "doctest.h"
#include "kine/exactlin.hpp"

#include <algorithm>
#include <random>

using namespace kine;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-6/4") == frac(-3, 2));
  CHECK(to_string(frac(4, 2)) == "2");
  CHECK(to_string(frac(-1, 3)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("kernel of identity is empty") { CHECK(kernel(Matrix::identity(2)).empty()); }

TEST_CASE("kernel of a row vector") {
  Matrix m{{1, -1}};
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector{1, 1});
}

TEST_CASE("fixed subspace with no actions is everything") { CHECK(fixed_subspace({}, 3).size() == 3); }

TEST_CASE("rotation has no fixed vector") {
  std::vector<Matrix> gens{Matrix{{0, -1}, {1, 0}}};
  CHECK(fixed_subspace(gens, 2).empty());
  std::vector<Matrix> bad{Matrix::identity(3)};
  CHECK_THROWS_AS(fixed_subspace(bad, 2), DimensionError);
}

TEST_CASE("rank-nullity and kernel vectors on random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), shape(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = shape(rng), c = shape(rng);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng) * (trial % 3 == 0 ? (j % 2) : 1);
    auto k = kernel(m);
    CHECK(rank(m) + k.size() == c);
    for (const auto& v : k) CHECK(is_zero(m * v));
  }
}

TEST_CASE("fixed subspace ignores the order of the actions") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> acts;
    for (int k = 0; k < 3; ++k) {
      Matrix m(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = (i + j + k) % 3 == 0 ? 0 : entry(rng);
      m(0, 0) = 0;
      acts.push_back(m);
    }
    auto a = fixed_subspace(acts, 4);
    std::reverse(acts.begin(), acts.end());
    auto b = fixed_subspace(acts, 4);
    CHECK(same_span(a, b, 4));
  }
}

TEST_CASE("inverse and determinant") {
  Matrix m{{2, 1}, {5, 3}};
  CHECK(determinant(m) == 1);
  CHECK(m * inverse(m) == Matrix::identity(2));
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST_CASE("solve") {
  Matrix a{{1, 1}, {1, -1}};
  auto x = solve(a, Vector{2, 0});
  REQUIRE(x);
  CHECK(*x == Vector{1, 1});
  CHECK_FALSE(solve(Matrix{{1, 1}, {1, 1}}, Vector{1, 2}));
}

TEST_CASE("inertia by congruence") {
  CHECK(inertia(Matrix{{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
  CHECK(inertia(Matrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 0}}) == Inertia{1, 1, 1});
  CHECK(inertia(Matrix{{2, 1}, {1, 2}}) == Inertia{2, 0, 0});
  CHECK(inertia(Matrix{{0, 0}, {0, 0}}) == Inertia{0, 0, 2});
  CHECK(inertia(Matrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) == Inertia{1, 2, 0});
}
