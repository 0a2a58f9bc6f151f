#pragma once

// Kinematical Lie algebras in generic dimension, their generalised Bargmann
// extensions, contractions of the Poincaré algebra and identification of raw
// structure constants against the catalogue.

#include "kine/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kine {

class UnknownTag : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for d < 3, where extra invariant tensors allow brackets this code does not model.
class OutOfScope : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotKinematical : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index bookkeeping for the basis L_ab (a<b, lexicographic), B_1..B_d, P_1..P_d, H [, Z].
/// Spatial indices are 0-based here.
class KinematicalBasis {
 public:
  explicit KinematicalBasis(std::size_t d, bool with_z = false);

  std::size_t d() const { return d_; }
  std::size_t dim() const { return dim_; }
  std::size_t rotation_count() const { return d_ * (d_ - 1) / 2; }
  bool has_z() const { return with_z_; }

  /// Index of L_ab for a != b; sign is -1 when a > b.
  std::size_t L(std::size_t a, std::size_t b) const;
  std::size_t B(std::size_t a) const { return rotation_count() + a; }
  std::size_t P(std::size_t a) const { return rotation_count() + d_ + a; }
  std::size_t H() const { return rotation_count() + 2 * d_; }
  std::size_t Z() const;

  std::vector<std::string> labels() const;

 private:
  std::size_t d_;
  bool with_z_;
  std::size_t dim_;
};

/// Coefficients of the most general rotation-equivariant brackets in generic d:
///   [H,B] = hb_b B + hb_p P      [H,P] = hp_b B + hp_p P
///   [B_a,B_b] = bb_l L_ab        [B_a,P_b] = bp_h δ_ab H + bp_l L_ab
///   [P_a,P_b] = pp_l L_ab
/// sigma is reserved and must be zero.
struct EquivariantCoeffs {
  Rational hb_b, hb_p, hp_b, hp_p, bb_l, bp_h, bp_l, pp_l, sigma;
  friend bool operator==(const EquivariantCoeffs&, const EquivariantCoeffs&) = default;
};

/// Extra data of a generalised Bargmann algebra: [B_a,P_b] also gets δ_ab Z, and [H,Z] = hz Z.
struct BargmannExtension {
  Rational hz;
};

/// Structure constants of the rotation brackets plus the given coefficients.
Tensor3 kinematical_tensor(std::size_t d, const EquivariantCoeffs& c,
                           const std::optional<BargmannExtension>& ext = std::nullopt);
/// Unchecked algebra built from the ansatz (may violate Jacobi).
LieAlgebra assemble(std::size_t d, const EquivariantCoeffs& c,
                    const std::optional<BargmannExtension>& ext = std::nullopt);

struct FamilyParams {
  std::optional<Rational> gamma;
  std::optional<Rational> chi;
  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct KinematicalAlgebra {
  std::size_t d = 0;
  LieAlgebra alg;
  std::string tag;
  FamilyParams params;
  EquivariantCoeffs coeffs;
};

/// Tags: s, g, n0, n+ (gamma in [-1,1]), n- (chi >= 0), c, iso(d,1), iso(d+1),
/// so(d+1,1), so(d,2), so(d+2).
const std::vector<std::string>& kinematical_tags();
EquivariantCoeffs canonical_coeffs(const std::string& tag, const FamilyParams& params = {});
KinematicalAlgebra build(const std::string& tag, std::size_t d, const FamilyParams& params = {});
/// Rows with a sign ε = ±1 share one constructor.
KinematicalAlgebra build_iso(std::size_t d, int epsilon);
KinematicalAlgebra build_so(std::size_t d, int epsilon);

struct BargmannAlgebra {
  std::size_t d = 0;
  LieAlgebra alg;
  std::string tag;
  FamilyParams params;
  EquivariantCoeffs coeffs;
  BargmannExtension ext;
};

/// Tags: ghat, nhat+, nhat-, b+ (gamma in [-1,1)), b0, b- (chi >= 0).
const std::vector<std::string>& bargmann_tags();
BargmannAlgebra build_bargmann(const std::string& tag, std::size_t d, const FamilyParams& params = {});
/// Tag and parameters of the kinematical algebra obtained by quotienting out Z.
std::pair<std::string, FamilyParams> bargmann_quotient_tag(const BargmannAlgebra& b);

/// Poincaré algebra with explicit speed of light:
/// [B,B] = c² L, [B,P] = H, [B,H] = c² P.
LieAlgebra poincare(std::size_t d, const Rational& c);

enum class ContractionMode { galilean_limit, carroll_limit };

/// One-parameter family f(t) = base + t * slope of structure constants.
struct ContractionWitness {
  std::size_t d = 0;
  Tensor3 base;
  Tensor3 slope;
  std::string parameter;  // "c^-2" or "c^2"
  LieAlgebra at(const Rational& t) const;
};

struct Contraction {
  KinematicalAlgebra limit;
  ContractionWitness witness;
};

Contraction contract(ContractionMode mode, std::size_t d);

struct JacobiVarietyResult {
  bool on_variety = true;
  std::vector<JacobiViolation> violations;
};

JacobiVarietyResult jacobi_variety_check(const EquivariantCoeffs& c, std::size_t d);

/// Reads the ansatz coefficients back from a tensor in kinematical basis; throws
/// NotKinematical naming the first bracket that does not fit the ansatz.
EquivariantCoeffs extract_coeffs(const LieAlgebra& alg, std::size_t d);

struct Fingerprint {
  std::size_t derived_dim = 0;
  std::size_t center_dim = 0;
  std::size_t killing_rank = 0;
  std::string ad_h_type;  // "zero", "nilpotent", "jordan", "scalar", "real-split", "complex"
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const LieAlgebra& alg, std::size_t d);

struct Identification {
  bool found = false;
  std::string tag;
  FamilyParams params;
  /// Columns are the catalogue basis expressed in the input basis, so that
  /// change_basis(input, *isomorphism) equals build(tag, d, params).alg.
  std::optional<Matrix> isomorphism;
  bool verified = false;
  Fingerprint invariants;
  std::vector<std::string> notes;
};

/// Normalises ad_H on the (B,P) plane and the bracket forms under GL(2) x scaling of H.
/// Throws NotKinematical when the input does not have the kinematical form.
Identification identify(const LieAlgebra& alg, std::size_t d);

/// Block-diagonal basis change acting as A on each (B_a, P_a) pair and as s on H.
Matrix kinematical_basis_change(std::size_t d, const Matrix& a, const Rational& s, bool with_z = false,
                                const Rational& z_scale = 1);

}  // namespace kine
