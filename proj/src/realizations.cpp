#include "kine/realizations.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace kine {

namespace {

constexpr std::array<std::size_t, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

std::size_t prime(std::size_t i) {
  if (i >= kPrimes.size()) throw std::out_of_range("Halton sequences are limited to 16 dimensions");
  return kPrimes[i];
}

Vec unit(std::size_t n, std::size_t i) { return Vec::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)); }

Vec diag_metric(std::size_t n, std::initializer_list<std::pair<std::size_t, double>> negatives) {
  Vec g = Vec::Ones(static_cast<Eigen::Index>(n));
  for (auto [i, v] : negatives) g(static_cast<Eigen::Index>(i)) = v;
  return g;
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Chart-coordinate components of the generator: J c = ξ.
Vec generator_in_chart(const EmbeddedHypersurface& hs, const Vec& params) {
  Mat j = hs.chart_jacobian(params);
  return j.colPivHouseholderQr().solve(hs.generator(params));
}

Mat chart_metric(const EmbeddedHypersurface& hs, const Vec& params) {
  Mat j = hs.chart_jacobian(params);
  return j.transpose() * hs.metric.asDiagonal() * j;
}

Vec point_of(const std::vector<Rational>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
  return out;
}

std::string signature_label(const Mat& h, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.transpose()));
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > tol * scale) ++pos;
    if (es.eigenvalues()(i) < -tol * scale) ++neg;
  }
  return "(" + std::to_string(pos) + "," + std::to_string(neg) + ")";
}

// Chart samples in [-1,1]^dim, skipping points rejected by the filter.
std::vector<Vec> chart_samples(std::size_t count, std::size_t dim, unsigned seed,
                               const std::function<bool(const Vec&)>& accept) {
  std::vector<Vec> out;
  std::size_t index = 1 + static_cast<std::size_t>(seed) * count;
  while (out.size() < count) {
    Vec p(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) p(static_cast<Eigen::Index>(k)) = -1 + 2 * halton(index, prime(k));
    ++index;
    if (accept(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

double halton(std::size_t index, std::size_t base) {
  double f = 1, r = 0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

Rational halton_exact(std::size_t index, std::size_t base) {
  Rational f = 1, r = 0;
  while (index > 0) {
    f /= static_cast<long>(base);
    r += f * static_cast<long>(index % base);
    index /= base;
  }
  return r;
}

std::vector<Vec> halton_points(std::size_t count, std::size_t dim, double lo, double hi, unsigned seed) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) {
    Vec p(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k)
      p(static_cast<Eigen::Index>(k)) = lo + (hi - lo) * halton(1 + seed * count + i, prime(k));
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

Vec AffineModel::event(const Vec& x, double t) const {
  if (static_cast<std::size_t>(x.size()) != d) throw DimensionError("event needs d spatial coordinates");
  Vec e(static_cast<Eigen::Index>(d + 2));
  e.head(static_cast<Eigen::Index>(d)) = x;
  e(static_cast<Eigen::Index>(d)) = t;
  e(static_cast<Eigen::Index>(d + 1)) = 1;
  return e;
}

void AffineModel::check(const Vec& e) const {
  if (static_cast<std::size_t>(e.size()) != d + 2) throw DimensionError("event must have d+2 coordinates");
  if (e(static_cast<Eigen::Index>(d + 1)) != 1) throw std::invalid_argument("event must have last coordinate 1");
}

double clock(const AffineModel& m, const Vec& a, const Vec& b) {
  m.check(a);
  m.check(b);
  const auto t = static_cast<Eigen::Index>(m.d);
  return b(t) - a(t);
}

double ruler(const AffineModel& m, const Vec& a, const Vec& b, double tol) {
  if (std::abs(clock(m, a, b)) > tol) throw NotSimultaneous("ruler needs simultaneous events");
  const auto d = static_cast<Eigen::Index>(m.d);
  return (b.head(d) - a.head(d)).norm();
}

Mat galilei_matrix(const Mat& r, const Vec& v, const Vec& p, double s) {
  const Eigen::Index d = r.rows();
  Mat g = Mat::Identity(d + 2, d + 2);
  g.topLeftCorner(d, d) = r;
  g.block(0, d, d, 1) = v;
  g.block(0, d + 1, d, 1) = p;
  g(d, d + 1) = s;
  return g;
}

Vec galilei_act(const Mat& g, const Vec& event) { return g * event; }

Rational clock(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() < 2) throw DimensionError("events must have equal length d+2");
  return b[b.size() - 2] - a[a.size() - 2];
}

Rational ruler_squared(const Vector& a, const Vector& b) {
  if (clock(a, b) != 0) throw NotSimultaneous("ruler needs simultaneous events");
  Rational s = 0;
  for (std::size_t i = 0; i + 2 < a.size(); ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
  return s;
}

Matrix galilei_matrix(const Matrix& r, const Vector& v, const Vector& p, const Rational& s) {
  const std::size_t d = r.rows();
  Matrix g = Matrix::identity(d + 2);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) g(i, j) = r(i, j);
    g(i, d) = v[i];
    g(i, d + 1) = p[i];
  }
  g(d, d + 1) = s;
  return g;
}

Vector galilei_act(const Matrix& g, const Vector& event) { return g * event; }

double proper_distance(const Vec& a, const Vec& b, double c) {
  if (a.size() != b.size() || a.size() < 3) throw DimensionError("events must have equal length d+2");
  const Eigen::Index d = a.size() - 2;
  const double dt = b(d) - a(d);
  return (b.head(d) - a.head(d)).squaredNorm() - c * c * dt * dt;
}

bool lightcone_membership(const Vec& a, const Vec& b, double c, double tol) {
  return std::abs(proper_distance(a, b, c)) <= tol;
}

Mat minkowski_eta(std::size_t d, double c) {
  Mat eta = Mat::Identity(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
  eta(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) = -c * c;
  return eta;
}

Mat lorentz_boost(std::size_t d, double c, std::size_t axis, double phi) {
  Mat l = Mat::Identity(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
  const auto a = static_cast<Eigen::Index>(axis), t = static_cast<Eigen::Index>(d);
  l(a, a) = std::cosh(phi);
  l(a, t) = c * std::sinh(phi);
  l(t, a) = std::sinh(phi) / c;
  l(t, t) = std::cosh(phi);
  return l;
}

Mat spatial_rotation(std::size_t d, std::size_t i, std::size_t j, double angle) {
  Mat l = Mat::Identity(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  l(a, a) = std::cos(angle);
  l(a, b) = -std::sin(angle);
  l(b, a) = std::sin(angle);
  l(b, b) = std::cos(angle);
  return l;
}

Mat poincare_matrix(const Mat& l, const Vec& v) {
  const Eigen::Index n = l.rows();
  Mat g = Mat::Identity(n + 1, n + 1);
  g.topLeftCorner(n, n) = l;
  g.block(0, n, n, 1) = v;
  return g;
}

Vec poincare_act(const Mat& g, const Vec& event) { return g * event; }

// ---------------------------------------------------------------------------

double level_residual(const EmbeddedHypersurface& hs, const Vec& x) {
  double r = 0;
  for (const auto& f : hs.levels) r = std::max(r, std::abs(f.value(x)));
  return r;
}

Mat tangent_basis(const EmbeddedHypersurface& hs, const Vec& x) {
  Mat grads(static_cast<Eigen::Index>(hs.levels.size()), static_cast<Eigen::Index>(hs.ambient_dim));
  for (std::size_t k = 0; k < hs.levels.size(); ++k) grads.row(static_cast<Eigen::Index>(k)) = hs.levels[k].gradient(x);
  Eigen::JacobiSVD<Mat> svd(grads, Eigen::ComputeFullV);
  const auto r = svd.rank();
  return svd.matrixV().rightCols(static_cast<Eigen::Index>(hs.ambient_dim) - r);
}

Mat induced_metric_at_point(const EmbeddedHypersurface& hs, const Vec& x) {
  Mat t = tangent_basis(hs, x);
  return t.transpose() * hs.metric.asDiagonal() * t;
}

std::string to_string(QuadricKind k) {
  switch (k) {
    case QuadricKind::DeSitter: return "deSitter";
    case QuadricKind::AntiDeSitter: return "antiDeSitter";
    case QuadricKind::Sphere: return "sphere";
    case QuadricKind::Hyperbolic: return "hyperbolic";
  }
  return "";
}

QuadricRealization quadric(QuadricKind kind, std::size_t d, const Rational& ell, std::size_t count, unsigned seed) {
  if (sgn(ell) == 0) throw std::invalid_argument("quadric radius must be nonzero");
  const std::size_t n = d + 2;
  QuadricRealization q;
  q.kind = kind;
  q.d = d;
  q.exact_metric = Matrix::identity(n);
  Rational level = ell * ell;
  Vector base = zero_vector(n);
  switch (kind) {
    case QuadricKind::DeSitter:
      q.exact_metric(0, 0) = -1;
      base[1] = ell;
      break;
    case QuadricKind::AntiDeSitter:
      q.exact_metric(0, 0) = -1;
      q.exact_metric(n - 1, n - 1) = -1;
      level = -level;
      base[0] = ell;
      break;
    case QuadricKind::Sphere: base[1] = ell; break;
    case QuadricKind::Hyperbolic:
      q.exact_metric(0, 0) = -1;
      level = -level;
      base[0] = abs(ell);
      break;
  }
  const Matrix& g = q.exact_metric;
  auto form = [&](const Vector& a, const Vector& b) { return dot(a, g * b); };

  std::size_t index = 1 + static_cast<std::size_t>(seed) * count;
  while (q.exact_samples.size() < count) {
    Vector v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = 2 * halton_exact(index, prime(k)) - 1;
    ++index;
    const Rational qv = form(v, v), qpv = form(base, v);
    if (sgn(qv) == 0 || sgn(qpv) == 0) continue;
    Vector p = base - (2 * qpv / qv) * v;
    if (kind == QuadricKind::Hyperbolic && sgn(p[0]) < 0) p = Rational(-1) * p;
    if (form(p, p) != level) throw std::logic_error("quadric sample is off the quadric");
    q.exact_samples.push_back(std::move(p));
  }

  auto& s = q.surface;
  s.name = to_string(kind);
  s.ambient_dim = n;
  s.chart_dim = d + 1;
  s.metric = Vec(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) s.metric(static_cast<Eigen::Index>(i)) = g(i, i).get_d();
  const Vec metric = s.metric;
  const double lv = level.get_d();
  s.levels.push_back({[metric, lv](const Vec& x) { return x.dot(metric.asDiagonal() * x) - lv; },
                      [metric](const Vec& x) -> Vec { return 2 * (metric.asDiagonal() * x); }});
  for (const auto& p : q.exact_samples) s.points.push_back(point_of(p));
  return q;
}

Inertia exact_induced_inertia(const Matrix& metric, const Vector& point) {
  Vector normal = metric * point;
  Matrix row = Matrix::from_rows(std::span<const Vector>(&normal, 1), normal.size());
  auto basis = kernel(row);
  Matrix t = Matrix::from_columns(std::span<const Vector>(basis), point.size());
  return inertia(t.transpose() * metric * t);
}

std::string to_string(NullKind k) {
  switch (k) {
    case NullKind::Hyperplane: return "hyperplane";
    case NullKind::Lightcone: return "lightcone";
    case NullKind::DeSitterCarroll: return "dS_Carroll";
    case NullKind::AntiDeSitterCarroll: return "AdS_Carroll";
  }
  return "";
}

NullKind parse_null_kind(const std::string& text) {
  for (auto k : {NullKind::Hyperplane, NullKind::Lightcone, NullKind::DeSitterCarroll, NullKind::AntiDeSitterCarroll})
    if (to_string(k) == text) return k;
  throw std::invalid_argument("unknown null hypersurface kind: " + text);
}

Vec inverse_stereographic(const Vec& w) {
  const Eigen::Index n = w.size();
  const double s = 1 + w.squaredNorm();
  Vec x(n + 1);
  x.head(n) = 2 * w / s;
  x(n) = (w.squaredNorm() - 1) / s;
  return x;
}

Mat inverse_stereographic_jacobian(const Vec& w) {
  const Eigen::Index n = w.size();
  const double s = 1 + w.squaredNorm();
  Mat j(n + 1, n);
  j.topRows(n) = 2 * Mat::Identity(n, n) / s - 4 * w * w.transpose() / (s * s);
  j.row(n) = 4 * w.transpose() / (s * s);
  return j;
}

Mat round_metric(const Vec& w) {
  const double s = 1 + w.squaredNorm();
  return 4 / (s * s) * Mat::Identity(w.size(), w.size());
}

NullRealization null_hypersurface(NullKind kind, std::size_t d, double ell, std::size_t count, unsigned seed,
                                  LightconeGenerator gen) {
  if (d < 1) throw std::invalid_argument("null hypersurfaces need d >= 1");
  const auto D = static_cast<Eigen::Index>(d);
  EmbeddedHypersurface s;
  s.name = to_string(kind);
  s.chart_dim = d + 1;
  auto any = [](const Vec&) { return true; };

  switch (kind) {
    case NullKind::Hyperplane: {
      const std::size_t n = d + 2;
      s.ambient_dim = n;
      s.metric = diag_metric(n, {{0, -1.0}});
      const Vec xi = unit(n, 0) + unit(n, n - 1);
      s.levels.push_back({[D](const Vec& x) { return x(0) - x(D + 1); },
                          [n, D](const Vec&) -> Vec {
                            Vec g = Vec::Zero(static_cast<Eigen::Index>(n));
                            g(0) = 1;
                            g(D + 1) = -1;
                            return g;
                          }});
      s.chart = [n, D](const Vec& p) -> Vec {
        Vec x(static_cast<Eigen::Index>(n));
        x(0) = p(D);
        x.segment(1, D) = p.head(D);
        x(D + 1) = p(D);
        return x;
      };
      s.chart_jacobian = [n, D, xi](const Vec&) -> Mat {
        Mat j = Mat::Zero(static_cast<Eigen::Index>(n), D + 1);
        j.block(1, 0, D, D) = Mat::Identity(D, D);
        j.col(D) = xi;
        return j;
      };
      s.generator = [xi](const Vec&) { return xi; };
      s.generator_jacobian = [n, D](const Vec&) -> Mat { return Mat::Zero(static_cast<Eigen::Index>(n), D + 1); };
      s.samples = chart_samples(count, d + 1, seed, any);
      break;
    }
    case NullKind::Lightcone: {
      const std::size_t n = d + 2;
      s.ambient_dim = n;
      s.metric = diag_metric(n, {{0, -1.0}});
      const Vec metric = s.metric;
      s.levels.push_back({[metric](const Vec& x) { return x.dot(metric.asDiagonal() * x); },
                          [metric](const Vec& x) -> Vec { return 2 * (metric.asDiagonal() * x); }});
      s.chart = [n](const Vec& q) -> Vec {
        Vec x(static_cast<Eigen::Index>(n));
        x(0) = q.norm();
        x.tail(q.size()) = q;
        return x;
      };
      s.chart_jacobian = [n](const Vec& q) -> Mat {
        Mat j(static_cast<Eigen::Index>(n), q.size());
        j.row(0) = (q / q.norm()).transpose();
        j.bottomRows(q.size()) = Mat::Identity(q.size(), q.size());
        return j;
      };
      if (gen == LightconeGenerator::Unit) {
        s.generator = [n](const Vec& q) -> Vec {
          Vec x(static_cast<Eigen::Index>(n));
          x(0) = 1;
          x.tail(q.size()) = q / q.norm();
          return x;
        };
        s.generator_jacobian = [n](const Vec& q) -> Mat {
          const double r = q.norm();
          const Vec u = q / r;
          Mat j = Mat::Zero(static_cast<Eigen::Index>(n), q.size());
          j.bottomRows(q.size()) = (Mat::Identity(q.size(), q.size()) - u * u.transpose()) / r;
          return j;
        };
      } else {
        s.generator = s.chart;
        s.generator_jacobian = s.chart_jacobian;
      }
      s.samples = chart_samples(count, d + 1, seed, [](const Vec& q) { return q.norm() >= 0.25; });
      break;
    }
    case NullKind::DeSitterCarroll: {
      if (ell == 0) throw std::invalid_argument("de Sitter radius must be nonzero");
      const std::size_t n = d + 3;
      s.ambient_dim = n;
      s.metric = diag_metric(n, {{0, -1.0}});
      const Vec metric = s.metric;
      const Vec xi = unit(n, 0) + unit(n, n - 1);
      const double l2 = ell * ell;
      s.levels.push_back({[metric, l2](const Vec& x) { return x.dot(metric.asDiagonal() * x) - l2; },
                          [metric](const Vec& x) -> Vec { return 2 * (metric.asDiagonal() * x); }});
      s.levels.push_back({[D](const Vec& x) { return x(0) - x(D + 2); },
                          [n, D](const Vec&) -> Vec {
                            Vec g = Vec::Zero(static_cast<Eigen::Index>(n));
                            g(0) = 1;
                            g(D + 2) = -1;
                            return g;
                          }});
      s.chart = [n, D, ell](const Vec& p) -> Vec {
        Vec x(static_cast<Eigen::Index>(n));
        x(0) = p(D);
        x.segment(1, D + 1) = ell * inverse_stereographic(p.head(D));
        x(D + 2) = p(D);
        return x;
      };
      s.chart_jacobian = [n, D, ell, xi](const Vec& p) -> Mat {
        Mat j = Mat::Zero(static_cast<Eigen::Index>(n), D + 1);
        j.block(1, 0, D + 1, D) = ell * inverse_stereographic_jacobian(p.head(D));
        j.col(D) = xi;
        return j;
      };
      s.generator = [xi](const Vec&) { return xi; };
      s.generator_jacobian = [n, D](const Vec&) -> Mat { return Mat::Zero(static_cast<Eigen::Index>(n), D + 1); };
      s.samples = chart_samples(count, d + 1, seed, any);
      break;
    }
    case NullKind::AntiDeSitterCarroll: {
      if (ell == 0) throw std::invalid_argument("anti de Sitter radius must be nonzero");
      const std::size_t n = d + 3;
      s.ambient_dim = n;
      s.metric = diag_metric(n, {{0, -1.0}, {n - 1, -1.0}});
      const Vec metric = s.metric;
      const Vec xi = unit(n, n - 2) + unit(n, n - 1);
      const double l2 = ell * ell;
      s.levels.push_back({[metric, l2](const Vec& x) { return x.dot(metric.asDiagonal() * x) + l2; },
                          [metric](const Vec& x) -> Vec { return 2 * (metric.asDiagonal() * x); }});
      s.levels.push_back({[D](const Vec& x) { return x(D + 1) - x(D + 2); },
                          [n, D](const Vec&) -> Vec {
                            Vec g = Vec::Zero(static_cast<Eigen::Index>(n));
                            g(D + 1) = 1;
                            g(D + 2) = -1;
                            return g;
                          }});
      s.chart = [n, D, l2](const Vec& p) -> Vec {
        Vec x(static_cast<Eigen::Index>(n));
        const Vec y = p.head(D);
        x(0) = std::sqrt(l2 + y.squaredNorm());
        x.segment(1, D) = y;
        x(D + 1) = p(D);
        x(D + 2) = p(D);
        return x;
      };
      s.chart_jacobian = [n, D, l2, xi](const Vec& p) -> Mat {
        const Vec y = p.head(D);
        Mat j = Mat::Zero(static_cast<Eigen::Index>(n), D + 1);
        j.block(0, 0, 1, D) = (y / std::sqrt(l2 + y.squaredNorm())).transpose();
        j.block(1, 0, D, D) = Mat::Identity(D, D);
        j.col(D) = xi;
        return j;
      };
      s.generator = [xi](const Vec&) { return xi; };
      s.generator_jacobian = [n, D](const Vec&) -> Mat { return Mat::Zero(static_cast<Eigen::Index>(n), D + 1); };
      s.samples = chart_samples(count, d + 1, seed, any);
      break;
    }
  }
  for (const auto& p : s.samples) s.points.push_back(s.chart(p));
  NullRealization out{std::move(s), {}};
  out.data = carroll_data(out.surface);
  return out;
}

EmbeddedHypersurface rescale_generator(const EmbeddedHypersurface& hs, std::function<double(const Vec&)> f,
                                       std::function<Vec(const Vec&)> grad_f) {
  if (!hs.is_null()) throw std::invalid_argument("only null hypersurfaces carry a generator");
  EmbeddedHypersurface out = hs;
  auto chart = hs.chart;
  auto jac = hs.chart_jacobian;
  auto gen = hs.generator;
  auto gen_jac = hs.generator_jacobian;
  out.generator = [chart, gen, f](const Vec& p) -> Vec { return f(chart(p)) * gen(p); };
  out.generator_jacobian = [chart, jac, gen, gen_jac, f, grad_f](const Vec& p) -> Mat {
    const Vec x = chart(p);
    const Vec df = jac(p).transpose() * grad_f(x);
    return gen(p) * df.transpose() + f(x) * gen_jac(p);
  };
  return out;
}

WeakCarrollData carroll_data(const EmbeddedHypersurface& hs) {
  if (!hs.is_null()) throw std::invalid_argument("only null hypersurfaces carry carrollian data");
  WeakCarrollData data;
  data.base_dim = hs.chart_dim;
  data.xi = [hs](const Vec& p) { return generator_in_chart(hs, p); };
  data.h = [hs](const Vec& p) { return chart_metric(hs, p); };
  return data;
}

CarrollCheck check_weak_carroll(const WeakCarrollData& data, const std::vector<Vec>& samples) {
  CarrollCheck c;
  c.min_large_sv = std::numeric_limits<double>::infinity();
  c.min_xi_norm = std::numeric_limits<double>::infinity();
  for (const auto& p : samples) {
    const Mat h = data.h(p);
    const Vec xi = data.xi(p);
    c.max_h_xi = std::max(c.max_h_xi, (h * xi).cwiseAbs().maxCoeff());
    c.min_xi_norm = std::min(c.min_xi_norm, xi.norm());
    Eigen::JacobiSVD<Mat> svd(h);
    const Vec sv = svd.singularValues();
    c.max_small_sv = std::max(c.max_small_sv, sv(sv.size() - 1));
    if (sv.size() > 1) c.min_large_sv = std::min(c.min_large_sv, sv(sv.size() - 2));
  }
  return c;
}

Weingarten weingarten(const EmbeddedHypersurface& hs, const Vec& params) {
  if (!hs.is_null()) throw std::invalid_argument("the null Weingarten map needs a null hypersurface");
  const Vec x = hs.chart(params);
  if (!x.allFinite()) throw DegenerateChart("chart is undefined at the given parameters");
  if (level_residual(hs, x) > 1e-9 * std::max(1.0, x.squaredNorm()))
    throw NotOnHypersurface("point is not on the hypersurface");
  const Mat j = hs.chart_jacobian(params);
  if (!j.allFinite()) throw DegenerateChart("chart Jacobian is undefined at the given parameters");
  Eigen::JacobiSVD<Mat> svd(j);
  const Vec sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0)) throw DegenerateChart("chart Jacobian is rank deficient");

  const Mat g = hs.metric.asDiagonal();
  Weingarten w;
  w.h = j.transpose() * g * j;
  w.second = hs.generator_jacobian(params).transpose() * g * j;
  w.asymmetry = max_abs(w.second - w.second.transpose());

  const Vec xi_c = j.colPivHouseholderQr().solve(hs.generator(params));
  Eigen::HouseholderQR<Mat> qr(xi_c);
  const Mat q = qr.householderQ();
  w.screen = q.rightCols(q.cols() - 1);
  w.h_quotient = w.screen.transpose() * w.h * w.screen;
  w.b_quotient = w.screen.transpose() * w.second * w.screen;
  w.weingarten = w.h_quotient.ldlt().solve(w.b_quotient);
  return w;
}

Mat lie_derivative_h(const EmbeddedHypersurface& hs, const Vec& params, double step) {
  const Eigen::Index m = params.size();
  const Mat h = chart_metric(hs, params);
  const Vec xi = generator_in_chart(hs, params);
  std::vector<Mat> dh(static_cast<std::size_t>(m));
  Mat dxi(m, m);  // dxi(k, i) = ∂_i ξ^k
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec plus = params, minus = params;
    plus(i) += step;
    minus(i) -= step;
    dh[static_cast<std::size_t>(i)] = (chart_metric(hs, plus) - chart_metric(hs, minus)) / (2 * step);
    dxi.col(i) = (generator_in_chart(hs, plus) - generator_in_chart(hs, minus)) / (2 * step);
  }
  Mat l = Mat::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) l += xi(k) * dh[static_cast<std::size_t>(k)];
  l += dxi.transpose() * h + h * dxi;
  return l;
}

HypersurfaceClassification classify_hypersurface(const EmbeddedHypersurface& hs, double rel_tol) {
  HypersurfaceClassification out;
  const std::size_t dq = hs.chart_dim - 1;
  for (const auto& p : hs.samples) {
    Weingarten w = weingarten(hs, p);
    out.per_sample.push_back(classify_carroll(w.b_quotient, w.h_quotient, dq, rel_tol));
    out.traces.push_back(w.weingarten.trace());
    out.max_asymmetry = std::max(out.max_asymmetry, w.asymmetry);
    out.max_lie_error = std::max(out.max_lie_error, max_abs(lie_derivative_h(hs, p) - 2 * w.second));
  }
  if (!out.per_sample.empty()) {
    bool uniform = true;
    for (auto c : out.per_sample) uniform = uniform && c == out.per_sample.front();
    if (uniform) out.cls = out.per_sample.front();
  }
  out.symmetric = out.max_asymmetry < 1e-10;
  out.lie_verified = out.max_lie_error < 1e-8;
  return out;
}

void write_samples_csv(std::ostream& os, const EmbeddedHypersurface& hs) {
  std::ostringstream body;
  body << std::setprecision(12);
  const std::size_t m = hs.is_null() ? hs.chart_dim : hs.ambient_dim - hs.levels.size();
  body << "index";
  for (std::size_t i = 0; i < hs.ambient_dim; ++i) body << ",x" << i;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) body << ",h" << i << "_" << j;
  body << ",label\n";
  for (std::size_t k = 0; k < hs.points.size(); ++k) {
    const Vec& x = hs.points[k];
    Mat h;
    std::string label;
    if (hs.is_null()) {
      const Weingarten w = weingarten(hs, hs.samples[k]);
      h = w.h;
      label = to_string(classify_carroll(w.b_quotient, w.h_quotient, hs.chart_dim - 1));
    } else {
      h = induced_metric_at_point(hs, x);
      label = signature_label(h);
    }
    body << k;
    for (Eigen::Index i = 0; i < x.size(); ++i) body << "," << x(i);
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = i; j < h.cols(); ++j) body << "," << (std::abs(h(i, j)) < 1e-15 ? 0.0 : h(i, j));
    body << "," << label << "\n";
  }
  os << body.str();
}

// ---------------------------------------------------------------------------

ExactNCData null_reduction(const Matrix& metric, const Vector& z) {
  const std::size_t n = metric.rows();
  if (!metric.is_square() || z.size() != n) throw InvalidReductionData("metric and Z have mismatched sizes");
  if (!is_symmetric(metric)) throw InvalidReductionData("metric is not symmetric");
  Inertia in = inertia(metric);
  if (in.zero != 0 || in.negative != 1) throw InvalidReductionData("metric is not lorentzian");
  if (is_zero(z)) throw InvalidReductionData("Z must be nonzero");
  if (dot(z, metric * z) != 0) throw InvalidReductionData("Z is not null");

  ExactNCData nc;
  nc.base_dim = n - 1;
  Matrix zrow = Matrix::from_rows(std::span<const Vector>(&z, 1), n);
  auto rows = kernel(zrow);
  nc.projection = Matrix::from_rows(std::span<const Vector>(rows), n);
  auto tau = solve(nc.projection.transpose(), metric * z);
  if (!tau) throw std::logic_error("Z^flat is not basic");
  nc.tau = *tau;
  nc.lambda = nc.projection * inverse(metric) * nc.projection.transpose();
  return nc;
}

std::pair<Matrix, Vector> flat_bargmann(std::size_t d) {
  const std::size_t n = d + 2;
  Matrix g(n, n);
  for (std::size_t a = 0; a < d; ++a) g(a, a) = 1;
  g(d, d + 1) = g(d + 1, d) = -1;
  return {g, unit_vector(n, d + 1)};
}

WeakNCData null_reduction(std::function<Mat(const Vec&)> metric, const Vec& z, const std::vector<Vec>& check_points,
                          double tol) {
  const Eigen::Index n = z.size();
  Eigen::Index k = 0;
  while (k < n && z(k) == 0) ++k;
  if (k == n) throw InvalidReductionData("Z must be nonzero");
  Mat proj = Mat::Zero(n - 1, n);
  for (Eigen::Index i = 0, r = 0; i < n; ++i) {
    if (i == k) continue;
    proj(r, i) = 1;
    proj(r, k) = -z(i) / z(k);
    ++r;
  }
  auto lift = [n, k](const Vec& y) {
    Vec x(n);
    x.head(k) = y.head(k);
    x(k) = 0;
    x.tail(n - k - 1) = y.tail(n - k - 1);
    return x;
  };
  const double step = 1e-5;
  for (const auto& y : check_points) {
    const Vec x = lift(y);
    const Mat g = metric(x);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (std::abs(z.dot(g * z)) > tol * scale) throw InvalidReductionData("Z is not null");
    const Mat lie = (metric(x + step * z) - metric(x - step * z)) / (2 * step);
    if (lie.cwiseAbs().maxCoeff() > tol * scale) throw InvalidReductionData("Z is not a Killing vector");
  }
  WeakNCData nc;
  nc.base_dim = static_cast<std::size_t>(n - 1);
  nc.tau = [metric, z, proj, lift](const Vec& y) -> Vec {
    return proj.transpose().colPivHouseholderQr().solve(metric(lift(y)) * z);
  };
  nc.lambda = [metric, proj, lift](const Vec& y) -> Mat {
    return proj * metric(lift(y)).inverse() * proj.transpose();
  };
  return nc;
}

Mat exterior_derivative(const std::function<Vec(const Vec&)>& form, const Vec& x, double step) {
  const Eigen::Index m = x.size();
  Mat grad(m, m);  // grad(i, j) = ∂_i τ_j
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec plus = x, minus = x;
    plus(i) += step;
    minus(i) -= step;
    grad.row(i) = ((form(plus) - form(minus)) / (2 * step)).transpose();
  }
  return grad - grad.transpose();
}

// ---------------------------------------------------------------------------

BundleOfScales bundle_of_scales(std::size_t d, std::size_t count, unsigned seed) {
  if (d < 2) throw std::invalid_argument("the bundle of scales needs d >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  BundleOfScales b;
  b.d = d;
  b.q.base_dim = d;
  b.q.xi = [n](const Vec& p) -> Vec {
    Vec xi = Vec::Zero(n);
    xi(0) = p(0);
    return xi;
  };
  b.q.h = [n](const Vec& p) -> Mat {
    Mat h = Mat::Zero(n, n);
    h.bottomRightCorner(n - 1, n - 1) = p(0) * p(0) * round_metric(p.tail(n - 1));
    return h;
  };
  b.to_lightcone = [n](const Vec& p) -> Vec {
    Vec x(n + 1);
    x(0) = p(0);
    x.tail(n) = p(0) * inverse_stereographic(p.tail(n - 1));
    return x;
  };
  b.to_lightcone_jacobian = [n](const Vec& p) -> Mat {
    const Vec w = p.tail(n - 1);
    Mat j = Mat::Zero(n + 1, n);
    j(0, 0) = 1;
    j.block(1, 0, n, 1) = inverse_stereographic(w);
    j.block(1, 1, n, n - 1) = p(0) * inverse_stereographic_jacobian(w);
    return j;
  };
  b.base_q = [n](const Vec& p) -> Vec { return inverse_stereographic(p.tail(n - 1)); };
  b.base_lightcone = [n](const Vec& x) -> Vec { return x.tail(n) / x(0); };
  for (auto p : halton_points(count, d, 0, 1, seed)) {
    p(0) = 0.5 + 2 * p(0);
    p.tail(n - 1) = (2 * p.tail(n - 1).array() - 1).matrix();
    b.samples.push_back(p);
  }
  return b;
}

BundleCheck check_bundle_of_scales(const BundleOfScales& b) {
  auto cone = null_hypersurface(NullKind::Lightcone, b.d - 1, 1, 1, 0, LightconeGenerator::Euler).surface;
  const Mat eta = cone.metric.asDiagonal();
  const auto n = static_cast<Eigen::Index>(b.d);
  BundleCheck c;
  for (const auto& p : b.samples) {
    const Vec x = b.to_lightcone(p);
    const Mat j = b.to_lightcone_jacobian(p);
    const Vec q = x.tail(n);
    c.generator_error = std::max(c.generator_error, (j * b.q.xi(p) - cone.generator(q)).cwiseAbs().maxCoeff());
    c.metric_error = std::max(c.metric_error, max_abs(j.transpose() * eta * j - b.q.h(p)));
    c.triangle_error = std::max(c.triangle_error, (b.base_lightcone(x) - b.base_q(p)).cwiseAbs().maxCoeff());
    c.lightcone_residual = std::max(c.lightcone_residual, (cone.chart(q) - x).cwiseAbs().maxCoeff());
  }
  return c;
}

}  // namespace kine
