#pragma once

// Lie algebras given by structure constants f^c_{ab}: [e_a, e_b] = f^c_{ab} e_c.

#include "kine/exactlin.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kine {

class NotALieAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAnIdeal : public std::invalid_argument {
 public:
  NotAnIdeal(const std::string& what, std::size_t basis_index, std::size_t ideal_index)
      : std::invalid_argument(what), basis_index(basis_index), ideal_index(ideal_index) {}
  std::size_t basis_index;
  std::size_t ideal_index;
};

/// Linear subspace of a parent space, kept in reduced echelon form.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t parent_dim, std::span<const Vector> spanning);

  static Subspace zero(std::size_t parent_dim) { return Subspace(parent_dim, {}); }
  static Subspace coordinate(std::size_t parent_dim, std::span<const std::size_t> indices);

  std::size_t parent_dim() const { return parent_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t parent_dim_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

struct BracketTerm {
  std::size_t index;
  Rational value;
};

class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Validates antisymmetry and the Jacobi identity; throws NotALieAlgebra.
  LieAlgebra(Tensor3 f, std::vector<std::string> labels);
  /// Skips the Jacobi check (antisymmetry is still required). Used when
  /// probing points that may lie off the Jacobi variety.
  static LieAlgebra unchecked(Tensor3 f, std::vector<std::string> labels);

  std::size_t dim() const { return f_.dim(); }
  const Tensor3& structure_constants() const { return f_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;

  /// Nonzero terms of [e_a, e_b].
  const std::vector<BracketTerm>& basis_bracket(std::size_t a, std::size_t b) const {
    return table_[a * dim() + b];
  }
  Vector bracket(const Vector& x, const Vector& y) const;
  Vector bracket_basis(std::size_t a, std::size_t b) const;
  /// Matrix of ad_x in the standard basis.
  Matrix ad(const Vector& x) const;
  Matrix ad_basis(std::size_t a) const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.f_ == b.f_; }

 private:
  LieAlgebra(Tensor3 f, std::vector<std::string> labels, bool check);
  Tensor3 f_;
  std::vector<std::string> labels_;
  std::vector<std::vector<BracketTerm>> table_;
};

struct JacobiViolation {
  std::size_t a, b, c;  // a < b < c
  Vector residual;      // J(e_a, e_b, e_c)
};

/// J(x,y,z) = [x,[y,z]] + [y,[z,x]] + [z,[x,y]] on basis triples. The Jacobiator
/// is totally antisymmetric, so only a < b < c is stored; the rank-4 tensor is
/// zero wherever no violation is listed.
struct Jacobiator {
  std::vector<JacobiViolation> nonzero;
  bool is_lie = true;
};

Jacobiator jacobiator(const LieAlgebra& alg);

Subspace derived_subalgebra(const LieAlgebra& alg);
Subspace center(const LieAlgebra& alg);
/// Killing form B(x,y) = tr(ad_x ad_y) as a matrix.
Matrix killing_form(const LieAlgebra& alg);
std::size_t killing_rank(const LieAlgebra& alg);

/// Smallest subalgebra containing the given vectors.
Subspace generated_subalgebra(const LieAlgebra& alg, std::span<const Vector> generators);
bool is_subalgebra(const LieAlgebra& alg, const Subspace& s);
bool is_ideal(const LieAlgebra& alg, const Subspace& s);
/// A small subset of basis vectors of `s` that generates it as a Lie algebra.
std::vector<Vector> generating_set(const LieAlgebra& alg, const Subspace& s);

/// Projection onto the quotient by a subspace, using the standard basis vectors
/// of the non-pivot coordinates as representatives of the quotient basis.
class QuotientMap {
 public:
  QuotientMap() = default;
  explicit QuotientMap(const Subspace& sub);

  std::size_t parent_dim() const { return parent_dim_; }
  std::size_t dim() const { return complement_.size(); }
  const std::vector<std::size_t>& representatives() const { return complement_; }
  Vector project(const Vector& v) const;
  Vector lift(const Vector& q) const;
  Matrix matrix() const;

 private:
  std::size_t parent_dim_ = 0;
  std::vector<Vector> echelon_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> complement_;
};

struct Quotient {
  LieAlgebra algebra;
  QuotientMap projection;
};

/// Throws NotAnIdeal naming a basis element and ideal vector whose bracket leaves the ideal.
Quotient quotient_by_ideal(const LieAlgebra& alg, const Subspace& ideal);

/// New basis e'_a = sum_p g^p_a e_p (columns of g). Throws SingularMatrix.
LieAlgebra change_basis(const LieAlgebra& alg, const Matrix& g);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
LieAlgebra abelian(std::size_t n, const std::string& prefix = "X");

}  // namespace kine
