#pragma once

// Geometric realizations in flat pseudo-euclidean spaces: affine Galilei and
// Minkowski models, quadrics, null hypersurfaces with their null Weingarten
// data, null reductions and the bundle of scales of the round sphere.

#include "kine/spencer.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kine {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

class NotSimultaneous : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotOnHypersurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateChart : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidReductionData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Halton low-discrepancy sequence: radical inverse of index in the given prime base.
double halton(std::size_t index, std::size_t base);
Rational halton_exact(std::size_t index, std::size_t base);
/// Points of the Halton sequence in [lo, hi]^dim, starting at index 1 + seed * count.
std::vector<Vec> halton_points(std::size_t count, std::size_t dim, double lo, double hi, unsigned seed = 0);

// ---------------------------------------------------------------------------
// Affine models: events (x, t, 1) in R^{d+2}.

enum class AffineKind { Galilei, Minkowski };

struct AffineModel {
  std::size_t d = 3;
  AffineKind kind = AffineKind::Galilei;
  double c = 1;  // speed of light, Minkowski only

  Vec event(const Vec& x, double t) const;
  /// Throws std::invalid_argument unless the event has length d+2 and last coordinate 1.
  void check(const Vec& e) const;
};

double clock(const AffineModel& m, const Vec& a, const Vec& b);
/// Euclidean distance between simultaneous events; throws NotSimultaneous otherwise.
double ruler(const AffineModel& m, const Vec& a, const Vec& b, double tol = 1e-12);
/// Block matrix [[R, v, p], [0, 1, s], [0, 0, 1]].
Mat galilei_matrix(const Mat& r, const Vec& v, const Vec& p, double s);
Vec galilei_act(const Mat& g, const Vec& event);

/// Exact counterparts on rational events.
Rational clock(const Vector& a, const Vector& b);
Rational ruler_squared(const Vector& a, const Vector& b);
Matrix galilei_matrix(const Matrix& r, const Vector& v, const Vector& p, const Rational& s);
Vector galilei_act(const Matrix& g, const Vector& event);

/// Δ(b − a) = ‖y − x‖² − c²(s − t)².
double proper_distance(const Vec& a, const Vec& b, double c);
bool lightcone_membership(const Vec& a, const Vec& b, double c, double tol = 1e-12);
/// diag(1, …, 1, −c²) on (x, t).
Mat minkowski_eta(std::size_t d, double c);
/// Boost mixing x_axis and t with rapidity phi; satisfies Lᵀ η L = η.
Mat lorentz_boost(std::size_t d, double c, std::size_t axis, double phi);
Mat spatial_rotation(std::size_t d, std::size_t i, std::size_t j, double angle);
/// Block matrix [[L, v], [0, 1]].
Mat poincare_matrix(const Mat& l, const Vec& v);
Vec poincare_act(const Mat& g, const Vec& event);

// ---------------------------------------------------------------------------
// Embedded hypersurfaces.

struct LevelFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

struct EmbeddedHypersurface {
  std::string name;
  std::size_t ambient_dim = 0;
  std::size_t chart_dim = 0;
  Vec metric;  // diagonal of the ambient metric
  std::vector<LevelFunction> levels;
  /// Chart parameters -> ambient point, its Jacobian (ambient_dim x chart_dim). Null hypersurfaces only.
  std::function<Vec(const Vec&)> chart;
  std::function<Mat(const Vec&)> chart_jacobian;
  /// ξ∘φ and its parameter derivatives ∂_i(ξ∘φ) (columns). Null hypersurfaces only.
  std::function<Vec(const Vec&)> generator;
  std::function<Mat(const Vec&)> generator_jacobian;
  std::vector<Vec> samples;  // chart parameters (null case)
  std::vector<Vec> points;   // ambient sample points

  bool is_null() const { return static_cast<bool>(generator); }
  Mat metric_matrix() const { return metric.asDiagonal(); }
};

/// Largest |F| over the level functions.
double level_residual(const EmbeddedHypersurface& hs, const Vec& x);
/// Euclidean-orthonormal basis of the tangent space at an ambient point (kernel of the level gradients).
Mat tangent_basis(const EmbeddedHypersurface& hs, const Vec& x);
/// Pullback of the ambient metric to the tangent basis above.
Mat induced_metric_at_point(const EmbeddedHypersurface& hs, const Vec& x);

enum class QuadricKind { DeSitter, AntiDeSitter, Sphere, Hyperbolic };
std::string to_string(QuadricKind k);

struct QuadricRealization {
  QuadricKind kind = QuadricKind::DeSitter;
  std::size_t d = 0;
  EmbeddedHypersurface surface;
  Matrix exact_metric;
  std::vector<Vector> exact_samples;  // rational points on the quadric
};

/// de Sitter: −x0² + Σ_{i≤d+1} xi² = ℓ²; anti de Sitter: −x0² + Σ_{i≤d} xi² − x_{d+1}² = −ℓ²;
/// sphere: Σ xi² = ℓ²; hyperbolic: −x0² + Σ xi² = −ℓ², x0 > 0. Ambient R^{d+2}.
/// Samples are rational: second intersections of rational lines through a base point.
/// Throws std::invalid_argument for ℓ = 0.
QuadricRealization quadric(QuadricKind kind, std::size_t d, const Rational& ell, std::size_t count = 16,
                           unsigned seed = 0);
/// Inertia of the ambient metric restricted to the tangent space {v : (G p)ᵀ v = 0}.
Inertia exact_induced_inertia(const Matrix& metric, const Vector& point);

enum class NullKind { Hyperplane, Lightcone, DeSitterCarroll, AntiDeSitterCarroll };
std::string to_string(NullKind k);
NullKind parse_null_kind(const std::string& text);

enum class LightconeGenerator { Unit, Euler };

/// Carrollian data in chart coordinates.
struct WeakCarrollData {
  std::size_t base_dim = 0;
  std::function<Vec(const Vec&)> xi;
  std::function<Mat(const Vec&)> h;
};

struct NullRealization {
  EmbeddedHypersurface surface;
  WeakCarrollData data;
};

/// Chart parameters put the null direction last, so h = diag(h_spatial, 0) on the hyperplane.
/// hyperplane: x0 = x_{d+1} in R^{d+1,1}; lightcone: x0 = |x| > 0 in R^{d+1,1} (generator
/// (1, x̂) or the Euler field x); dS_Carroll: Q ∩ {x0 = x_{d+2}} in R^{d+2,1};
/// AdS_Carroll: Q' ∩ {x_{d+1} = x_{d+2}} in R^{d+1,2}.
NullRealization null_hypersurface(NullKind kind, std::size_t d, double ell = 1, std::size_t count = 16,
                                  unsigned seed = 0, LightconeGenerator gen = LightconeGenerator::Unit);

/// Replaces ξ by f ξ for a positive function f with ambient gradient grad_f.
EmbeddedHypersurface rescale_generator(const EmbeddedHypersurface& hs, std::function<double(const Vec&)> f,
                                       std::function<Vec(const Vec&)> grad_f);

WeakCarrollData carroll_data(const EmbeddedHypersurface& hs);

struct CarrollCheck {
  double max_h_xi = 0;        // max |h(ξ, ·)|
  double max_small_sv = 0;    // largest of the smallest singular values of h
  double min_large_sv = 0;    // smallest of the remaining singular values
  double min_xi_norm = 0;
  bool ok(double tol = 1e-10) const { return max_h_xi < tol && max_small_sv < tol && min_large_sv > 1e-3; }
};

CarrollCheck check_weak_carroll(const WeakCarrollData& data, const std::vector<Vec>& samples);

struct Weingarten {
  Mat h;       // induced metric in chart coordinates
  Mat second;  // B_ij = g(∂_i(ξ∘φ), ∂_jφ) in chart coordinates
  Mat screen;  // chart vectors spanning a complement of ξ
  Mat h_quotient, b_quotient;  // h and B on TM/L in the screen basis
  Mat weingarten;              // b = h⁻¹ B on TM/L
  double asymmetry = 0;        // max |B − Bᵀ|
};

/// Throws NotOnHypersurface or DegenerateChart.
Weingarten weingarten(const EmbeddedHypersurface& hs, const Vec& params);

/// ℒ_ξ h in chart coordinates by central differences.
Mat lie_derivative_h(const EmbeddedHypersurface& hs, const Vec& params, double step = 1e-5);

struct HypersurfaceClassification {
  std::optional<CarrollTorsionClass> cls;  // empty when the samples disagree
  std::vector<CarrollTorsionClass> per_sample;
  std::vector<double> traces;  // tr_h B per sample
  double max_asymmetry = 0;
  double max_lie_error = 0;  // max |ℒ_ξ h − 2B|
  bool symmetric = false;    // max_asymmetry < 1e-10
  bool lie_verified = false;  // max_lie_error < 1e-8
};

HypersurfaceClassification classify_hypersurface(const EmbeddedHypersurface& hs, double rel_tol = 1e-9);

/// CSV with one row per sample: index, ambient coordinates, upper triangle of the induced metric, label.
void write_samples_csv(std::ostream& os, const EmbeddedHypersurface& hs);

// ---------------------------------------------------------------------------
// Null reduction of a flat lorentzian space with a parallel null vector Z.

struct ExactNCData {
  std::size_t base_dim = 0;
  Matrix projection;  // π: R^{d+2} -> R^{d+1}, kernel span{Z}
  Vector tau;         // π*τ = Z^♭
  Matrix lambda;      // π*λ(α,β) = g((π*α)^♯, (π*β)^♯)
};

/// Throws InvalidReductionData if g is not lorentzian or Z is not null.
ExactNCData null_reduction(const Matrix& metric, const Vector& z);
/// Σ dx_a² − 2 dt dv on (x_1..x_d, t, v) and Z = ∂_v.
std::pair<Matrix, Vector> flat_bargmann(std::size_t d);

struct WeakNCData {
  std::size_t base_dim = 0;
  std::function<Vec(const Vec&)> tau;
  std::function<Mat(const Vec&)> lambda;
};

/// Null reduction of a metric field with a constant null vector Z. Quotient coordinates are
/// those of the non-pivot axes of Z, lifted by setting the remaining coordinate to zero.
/// Throws InvalidReductionData if Z is not null or not Killing at the check points.
WeakNCData null_reduction(std::function<Mat(const Vec&)> metric, const Vec& z,
                          const std::vector<Vec>& check_points, double tol = 1e-8);
/// dτ by central differences.
Mat exterior_derivative(const std::function<Vec(const Vec&)>& form, const Vec& x, double step = 1e-5);

// ---------------------------------------------------------------------------
// Bundle of scales of the round sphere S^{d-1}: Q with coordinates (λ, w), w stereographic.

struct BundleOfScales {
  std::size_t d = 0;
  WeakCarrollData q;                               // ξ = λ∂_λ, h = λ² · round
  std::function<Vec(const Vec&)> to_lightcone;     // (λ, w) -> (λ, λ x(w)) in R^{d,1}
  std::function<Mat(const Vec&)> to_lightcone_jacobian;
  std::function<Vec(const Vec&)> base_q;           // (λ, w) -> x(w) ∈ S^{d-1}
  std::function<Vec(const Vec&)> base_lightcone;   // p -> p_spatial / p0
  std::vector<Vec> samples;
};

/// Requires d >= 2.
BundleOfScales bundle_of_scales(std::size_t d, std::size_t count = 16, unsigned seed = 0);

struct BundleCheck {
  double generator_error = 0;  // |Φ_* ξ_Q − ξ_L|
  double metric_error = 0;     // |Φ* h_L − h_Q|
  double triangle_error = 0;   // |π_L ∘ Φ − π_Q|
  double lightcone_residual = 0;  // distance of Φ(λ, w) from the lightcone chart image
};

/// Compares with the lightcone in R^{d,1} carrying the Euler generator.
BundleCheck check_bundle_of_scales(const BundleOfScales& b);

/// Round metric 4/(1+|w|²)² δ on S^{d-1} in stereographic coordinates.
Mat round_metric(const Vec& w);
/// Inverse stereographic projection R^{n} -> S^{n} ⊂ R^{n+1} and its Jacobian.
Vec inverse_stereographic(const Vec& w);
Mat inverse_stereographic_jacobian(const Vec& w);

}  // namespace kine
