#pragma once

// Spencer differential ∂: Hom(V,g) → Hom(Λ²V,V) for the lorentzian, galilean
// and carrollian structure algebras g ⊂ gl(V), V = R^{d+1} with basis e0..ed,
// together with the intrinsic torsion class decision procedures.

#include "kine/exactlin.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace kine {

enum class StructureKind { Lorentzian, Galilean, Carrollian };
std::string to_string(StructureKind k);
StructureKind parse_structure_kind(const std::string& text);

class TrivialCokernel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear span of the generators inside gl(d+1).
struct StructureAlgebra {
  StructureKind kind = StructureKind::Lorentzian;
  std::size_t d = 0;
  std::vector<Matrix> generators;

  std::size_t n() const { return d + 1; }
  std::size_t dim() const { return generators.size(); }
  /// Coordinates of x in the generator basis; throws std::invalid_argument if x ∉ g.
  Vector coordinates(const Matrix& x) const;
};

/// Lorentzian: so(d,1) for η = diag(−1,1,…,1), generators E_ab − E_ba (0<a<b) then E_0a + E_a0.
/// Galilean: E_ab − E_ba (0<a<b) then E_a0. Carrollian: E_ab − E_ba (0<a<b) then E_0a.
/// Validates closure under the commutator and the defining invariants.
StructureAlgebra structure_algebra(StructureKind kind, std::size_t d);

/// Coordinates: Hom(V,g) ∋ κ has entry i*dim g + j = coefficient of generator j in κ(e_i);
/// Hom(Λ²V,V) ∋ T has entry p*n + k = component k of T(e_i,e_j), p the index of the pair
/// i<j in lexicographic order.
std::size_t wedge2_dim(std::size_t n);
std::size_t wedge2_index(std::size_t n, std::size_t i, std::size_t j);

Matrix spencer_matrix(const StructureAlgebra& sa);

/// Actions of X ∈ g: (X·κ)_v = [X,κ_v] − κ_{Xv} and (X·T)(v,w) = X T(v,w) − T(Xv,w) − T(v,Xw).
Matrix hom_v_g_action(const StructureAlgebra& sa, const Matrix& x);
Matrix hom_wedge2_v_action(const Matrix& x);

/// π: Hom(Λ²V,V) → model space, surjective with kernel image(∂); s a right inverse of π.
/// The projector P = s∘π is idempotent with kernel image(∂).
struct CokernelProjector {
  std::string model;         // "wedge2 V*" or "sym2 Ann e0"
  Matrix model_map;          // π
  Matrix section;            // s
  Matrix projector;          // s∘π
  std::vector<Matrix> model_action;  // action of each generator on the model space
};

/// Galilean: T ↦ α⁰∘T in Λ²V* (coordinates i<j). Carrollian: K(e_a,e_b) = h(T(e0,e_a),e_b) +
/// h(T(e0,e_b),e_a) in ⊙²Ann e0 (coordinates 1≤a≤b≤d). Throws TrivialCokernel for lorentzian.
CokernelProjector coker_projector(const StructureAlgebra& sa);

struct SpencerReport {
  StructureKind kind = StructureKind::Lorentzian;
  std::size_t d = 0;
  std::size_t dim_hom_v_h = 0;
  std::size_t dim_hom_wedge2v_v = 0;
  std::size_t rank = 0;
  std::size_t dim_ker = 0;
  std::size_t dim_coker = 0;
  Matrix coker_projector;  // zero when the cokernel is trivial
};

SpencerReport spencer_report(const StructureAlgebra& sa);

enum class NCTorsionClass { NC, TTNC, TNC };
enum class CarrollTorsionClass { TotallyGeodesic, Minimal, TotallyUmbilical, Generic };
std::string to_string(NCTorsionClass c);
std::string to_string(CarrollTorsionClass c);

/// τ a nonzero covector and dτ an antisymmetric (d+1)×(d+1) matrix. For d = 1 only NC and TNC occur.
NCTorsionClass classify_nc(const Vector& tau, const Matrix& dtau, std::size_t d);
NCTorsionClass classify_nc(const Eigen::VectorXd& tau, const Eigen::MatrixXd& dtau, std::size_t d,
                           double rel_tol = 1e-9);

/// K symmetric and h positive definite, both d×d on the quotient by ξ. For d = 1 only
/// TotallyGeodesic and Generic occur.
CarrollTorsionClass classify_carroll(const Matrix& k, const Matrix& h, std::size_t d);
CarrollTorsionClass classify_carroll(const Eigen::MatrixXd& k, const Eigen::MatrixXd& h, std::size_t d,
                                     double rel_tol = 1e-9);

}  // namespace kine
