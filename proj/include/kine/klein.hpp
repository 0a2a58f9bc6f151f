#pragma once

// Klein pairs (k, h): effectiveness, reductive complements, linear isotropy
// representation and invariant tensors on k/h.

#include "kine/catalog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kine {

class NotASubalgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GeometryClass { Lorentzian, Riemannian, Galilean, Carrollian, Other };
std::string to_string(GeometryClass c);

struct KleinPair {
  LieAlgebra k;
  Subspace h;
  std::optional<Subspace> m;
  std::string tag;
  std::size_t d = 0;
  FamilyParams params;
};

/// Validates that h is a subalgebra of k; throws NotASubalgebra.
KleinPair make_klein_pair(LieAlgebra k, Subspace h, std::string tag = "");

struct KleinRow {
  std::string tag;           // identifier, e.g. "torsional-desitter-galilei"
  std::string name;          // display name
  std::string pair;          // e.g. "(iso(d,1), so(d,1))"
  GeometryClass section;     // section of the classification table
  std::optional<std::string> parameter;  // "gamma" or "chi" for the torsional families
};

/// The sixteen rows of the classification of (d+1)-dimensional kinematical Klein geometries.
const std::vector<KleinRow>& klein_rows();
const KleinRow& klein_row(const std::string& tag);
EquivariantCoeffs klein_coeffs(const std::string& tag, const FamilyParams& params = {});
/// The pair (k, span{L, B}). Torsional families default to gamma = 0 and chi = 1.
KleinPair build_klein(const std::string& tag, std::size_t d, const FamilyParams& params = {});
/// Generalised Bargmann algebra with h = span{L, B}.
KleinPair build_bargmann_pair(const std::string& tag, std::size_t d, const FamilyParams& params = {});

struct Effectiveness {
  bool effective = true;
  Subspace ideal;  // largest ideal of k contained in h
};

Effectiveness is_effective(const KleinPair& p);

/// Coordinates relative to the splitting k = h ⊕ m0, where m0 is spanned by
/// the standard basis vectors at the non-pivot positions of h.
class Splitting {
 public:
  Splitting() = default;
  explicit Splitting(const Subspace& h);
  std::size_t h_dim() const { return h_basis_.size(); }
  std::size_t m_dim() const { return quotient_.dim(); }
  const std::vector<Vector>& h_basis() const { return h_basis_; }
  const QuotientMap& quotient() const { return quotient_; }
  Vector h_coords(const Vector& v) const;
  Vector m_coords(const Vector& v) const { return quotient_.project(v); }
  Vector m_rep(std::size_t j) const;

 private:
  std::vector<Vector> h_basis_;
  std::vector<std::size_t> h_pivots_;
  QuotientMap quotient_;
};

struct Reductivity {
  bool reductive = false;
  std::optional<Subspace> m;
  /// Basis of m, one vector lifting each quotient basis element (same order as the isotropy basis).
  std::vector<Vector> m_basis;
  bool symmetric = false;
  std::string witness;  // explanation when not reductive
};

Reductivity reductive_complement(const KleinPair& p);

struct IsotropyRep {
  std::vector<Vector> h_basis;
  std::vector<Matrix> generators;          // λ_X on k/h, one per h_basis element
  std::vector<std::string> quotient_labels;  // e.g. P1bar, ..., Hbar
  Splitting splitting;
};

IsotropyRep isotropy(const KleinPair& p);
/// Checks λ_[X,Y] = [λ_X, λ_Y] on all pairs of h basis vectors.
bool is_homomorphism(const KleinPair& p, const IsotropyRep& rep);

/// Induced actions on tensor spaces. Symmetric and antisymmetric tensors are
/// coordinatised by their upper triangle (i <= j, resp. i < j), row by row.
Matrix dual_action(const Matrix& lambda);
Matrix sym2_action(const Matrix& lambda);         // on ⊙²V: T ↦ λT + Tλᵀ
Matrix sym2_dual_action(const Matrix& lambda);    // on ⊙²V*: g ↦ −(λᵀg + gλ)
Matrix wedge2_dual_action(const Matrix& lambda);  // on Λ²V*
Matrix symmetric_from_coords(const Vector& coords, std::size_t n);
Matrix antisymmetric_from_coords(const Vector& coords, std::size_t n);

struct InvariantSignature {
  std::size_t dim_v = 0, dim_v_dual = 0, dim_sym2_v = 0, dim_sym2_v_dual = 0, dim_wedge2_v_dual = 0;
  std::vector<Vector> vectors, covectors;
  std::vector<Matrix> bivectors, metrics, two_forms;
  GeometryClass cls = GeometryClass::Other;
  std::optional<Matrix> metric;     // lorentzian or riemannian witness
  std::optional<Inertia> metric_inertia;
  std::optional<Vector> tau;        // galilean clock covector
  std::optional<Matrix> lambda;     // galilean spatial cometric
  std::optional<Vector> xi;         // carrollian vector
  std::optional<Matrix> h;          // carrollian spatial metric
  std::vector<std::string> notes;
};

/// Probe set for multi-dimensional invariant spaces: all combinations of the
/// basis with integer coefficients in [-2, 2] when the space has dimension at
/// most 4, otherwise the basis vectors and their pairwise sums and differences.
std::vector<Vector> probe_coefficients(std::size_t k);

InvariantSignature invariant_signature(const KleinPair& p);

}  // namespace kine
