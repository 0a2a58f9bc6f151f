#pragma once

// Exact rational linear algebra used by every algebraic module.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kine {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Canonicalized p/q; use instead of the two-argument mpq_class constructor.
Rational frac(long p, long q);
/// Parses "p", "-p" or "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);

/// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols);
  static Matrix from_columns(std::span<const Vector> cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  std::span<const Rational> entries() const { return data_; }

  Matrix transpose() const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  Rational trace() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& v);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);

/// Stacks matrices with equal column counts vertically.
Matrix vstack(std::span<const Matrix> blocks);

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry
/// in the leftmost remaining column, so results are deterministic.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RowEchelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);

/// Basis of {v : m v = 0}, one vector per free column in increasing order.
std::vector<Vector> kernel(const Matrix& m);

/// Basis of the simultaneous kernel of all actions on a space of dimension `dim`.
std::vector<Vector> fixed_subspace(std::span<const Matrix> actions, std::size_t dim);

/// Some solution of a x = b (free variables set to zero), or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Matrix inverse(const Matrix& m);
Rational determinant(const Matrix& m);

/// Echelon basis of the span of the given vectors (rows of the RREF).
std::vector<Vector> span_basis(std::span<const Vector> vectors, std::size_t dim);
bool in_span(std::span<const Vector> basis, const Vector& v);
std::size_t span_dimension(std::span<const Vector> vectors, std::size_t dim);
/// True iff the two lists span the same subspace.
bool same_span(std::span<const Vector> a, std::span<const Vector> b, std::size_t dim);

/// Sylvester inertia of a symmetric matrix, computed by exact congruence.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

Inertia inertia(const Matrix& symmetric);
bool is_symmetric(const Matrix& m);

/// f^c_{ab} stored densely as entries[(a*n + b)*n + c].
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n);

  std::size_t dim() const { return n_; }
  Rational& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * n_ + b) * n_ + c]; }
  const Rational& operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return data_[(a * n_ + b) * n_ + c];
  }

  bool is_antisymmetric() const;
  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace kine
