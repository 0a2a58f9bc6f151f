#include "doctest.h"
#include "kine/realizations.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace kine;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Exact orthogonal matrix from the Cayley transform of a rational antisymmetric matrix.
Matrix cayley(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> dist(-3, 3);
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      a(i, j) = frac(dist(rng), 2);
      a(j, i) = -a(i, j);
    }
  Matrix id = Matrix::identity(d);
  return (id - a) * inverse(id + a);
}

Mat random_lorentz(std::mt19937& rng, std::size_t d, double c) {
  std::uniform_real_distribution<double> phi(-1.5, 1.5), ang(0, 6.3);
  Mat l = Mat::Identity(static_cast<Eigen::Index>(d + 1), static_cast<Eigen::Index>(d + 1));
  for (int k = 0; k < 3; ++k) {
    std::size_t i = k % d, j = (k + 1) % d;
    l = lorentz_boost(d, c, i, phi(rng)) * spatial_rotation(d, i, j, ang(rng)) * l;
  }
  return l;
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& p, double h = 1e-6) {
  Vec f0 = f(p);
  Mat j(f0.size(), p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec a = p, b = p;
    a(i) += h;
    b(i) -= h;
    j.col(i) = (f(a) - f(b)) / (2 * h);
  }
  return j;
}

const NullKind null_kinds[] = {NullKind::Hyperplane, NullKind::Lightcone, NullKind::DeSitterCarroll,
                               NullKind::AntiDeSitterCarroll};

}  // namespace

TEST_CASE("clock, ruler and Galilei boost examples") {
  AffineModel m{3, AffineKind::Galilei, 1};
  Vec a = vec({0, 0, 0, 0, 1}), b = vec({1, 2, 3, 5, 1});
  CHECK(clock(m, a, b) == doctest::Approx(5));
  CHECK(ruler(m, vec({0, 0, 0, 7, 1}), vec({3, 4, 0, 7, 1})) == doctest::Approx(5));
  CHECK_THROWS_AS(ruler(m, a, b), NotSimultaneous);
  Mat boost = galilei_matrix(Mat::Identity(3, 3), vec({1, 0, 0}), Vec::Zero(3), 0);
  Vec moved = galilei_act(boost, vec({0, 0, 0, 2, 1}));
  CHECK((moved - vec({2, 0, 0, 2, 1})).norm() < 1e-15);
  CHECK_THROWS(m.check(vec({0, 0, 0, 0, 2})));
}

TEST_CASE("clock and ruler are Galilei invariant") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(-5, 5);
  std::uniform_real_distribution<double> real(-3, 3), ang(0, 6.3);
  auto rnd = [&] { return frac(dist(rng), 1 + std::abs(dist(rng))); };
  for (int trial = 0; trial < 100; ++trial) {
    Matrix r = cayley(rng, 3);
    CHECK(r.transpose() * r == Matrix::identity(3));
    Matrix g = galilei_matrix(r, Vector{rnd(), rnd(), rnd()}, Vector{rnd(), rnd(), rnd()}, rnd());
    Vector a{rnd(), rnd(), rnd(), rnd(), 1}, b{rnd(), rnd(), rnd(), rnd(), 1};
    Vector c = a;
    c[0] += rnd();
    c[2] += rnd();
    CHECK(clock(galilei_act(g, a), galilei_act(g, b)) == clock(a, b));
    CHECK(ruler_squared(galilei_act(g, a), galilei_act(g, c)) == ruler_squared(a, c));

    Mat rf = spatial_rotation(2, 0, 1, ang(rng)).topLeftCorner(3, 3);
    rf = rf * spatial_rotation(3, 1, 2, ang(rng)).topLeftCorner(3, 3);
    Mat gf = galilei_matrix(rf, vec({real(rng), real(rng), real(rng)}), vec({real(rng), real(rng), real(rng)}),
                            real(rng));
    AffineModel m{3, AffineKind::Galilei, 1};
    Vec af = m.event(vec({real(rng), real(rng), real(rng)}), 1.5);
    Vec bf = m.event(vec({real(rng), real(rng), real(rng)}), 1.5);
    Vec ga = galilei_act(gf, af), gb = galilei_act(gf, bf);
    CHECK(std::abs(clock(m, ga, gb) - clock(m, af, bf)) < 1e-10);
    CHECK(std::abs(ruler(m, ga, gb, 1e-10) - ruler(m, af, bf)) < 1e-10);
  }
}

TEST_CASE("proper distance examples and Poincare invariance") {
  Vec o = vec({0, 0, 0, 0, 1});
  CHECK(proper_distance(o, vec({1, 0, 0, 1, 1}), 1) == doctest::Approx(0));
  CHECK(lightcone_membership(o, vec({1, 0, 0, 1, 1}), 1));
  CHECK(proper_distance(o, vec({3, 0, 0, 4, 1}), 1) == doctest::Approx(-7));
  CHECK_FALSE(lightcone_membership(o, vec({3, 0, 0, 4, 1}), 1));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> real(-2, 2);
  for (double c : {1.0, 2.5}) {
    Mat eta = minkowski_eta(3, c);
    for (int trial = 0; trial < 100; ++trial) {
      Mat l = random_lorentz(rng, 3, c);
      CHECK((l.transpose() * eta * l - eta).cwiseAbs().maxCoeff() < 1e-9 * l.squaredNorm());
      Mat g = poincare_matrix(l, vec({real(rng), real(rng), real(rng), real(rng)}));
      Vec a = vec({real(rng), real(rng), real(rng), real(rng), 1});
      Vec b = vec({real(rng), real(rng), real(rng), real(rng), 1});
      double before = proper_distance(a, b, c), after = proper_distance(poincare_act(g, a), poincare_act(g, b), c);
      double scale = std::max(1.0, (poincare_act(g, b) - poincare_act(g, a)).squaredNorm() * c * c);
      CHECK(std::abs(after - before) < 1e-10 * scale);
    }
  }
}

TEST_CASE("quadric signatures by exact inertia") {
  Matrix ds = Matrix::identity(5);
  ds(0, 0) = -1;
  CHECK(exact_induced_inertia(ds, Vector{0, 1, 0, 0, 0}) == Inertia{3, 1, 0});
  for (std::size_t d = 3; d <= 4; ++d) {
    for (auto kind : {QuadricKind::DeSitter, QuadricKind::AntiDeSitter, QuadricKind::Sphere, QuadricKind::Hyperbolic}) {
      for (Rational ell : {Rational(1), frac(3, 2)}) {
        auto q = quadric(kind, d, ell);
        CAPTURE(to_string(kind));
        CHECK(q.exact_samples.size() == 16);
        Inertia expected = (kind == QuadricKind::DeSitter || kind == QuadricKind::AntiDeSitter) ? Inertia{d, 1, 0}
                                                                                                : Inertia{d + 1, 0, 0};
        for (const auto& p : q.exact_samples) {
          Rational level = dot(p, q.exact_metric * p);
          Rational l2 = ell * ell;
          bool positive = kind == QuadricKind::DeSitter || kind == QuadricKind::Sphere;
          CHECK(level == (positive ? l2 : -l2));
          CHECK(exact_induced_inertia(q.exact_metric, p) == expected);
          if (kind == QuadricKind::Hyperbolic) CHECK(sgn(p[0]) > 0);
        }
        for (const auto& x : q.surface.points) {
          CHECK(level_residual(q.surface, x) < 1e-12 * std::max(1.0, x.squaredNorm()));
          Eigen::SelfAdjointEigenSolver<Mat> es(induced_metric_at_point(q.surface, x));
          int neg = 0;
          for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) neg += es.eigenvalues()(i) < 0;
          CHECK(static_cast<std::size_t>(neg) == expected.negative);
        }
      }
    }
  }
  CHECK_THROWS(quadric(QuadricKind::Sphere, 3, 0));
}

TEST_CASE("anti de Sitter base point lies on the quadric") {
  auto q = quadric(QuadricKind::AntiDeSitter, 3, 1);
  CHECK(level_residual(q.surface, vec({1, 0, 0, 0, 0})) < 1e-12);
}

TEST_CASE("null hyperplane has induced metric diag(1,1,1,0)") {
  auto nr = null_hypersurface(NullKind::Hyperplane, 3);
  Mat expected = Mat::Identity(4, 4);
  expected(3, 3) = 0;
  for (const auto& p : nr.surface.samples) CHECK((nr.data.h(p) - expected).cwiseAbs().maxCoeff() < 1e-15);
  Vec xi = nr.surface.generator(nr.surface.samples[0]);
  CHECK((xi - vec({1, 0, 0, 0, 1})).norm() < 1e-15);
}

TEST_CASE("lightcone radical is spanned by the radial generator") {
  auto nr = null_hypersurface(NullKind::Lightcone, 3);
  for (const auto& q : nr.surface.samples) {
    Eigen::SelfAdjointEigenSolver<Mat> es(nr.data.h(q));
    Vec k = es.eigenvectors().col(0);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-12);
    CHECK(std::abs(std::abs(k.dot(q.normalized())) - 1) < 1e-12);
  }
}

TEST_CASE("null hypersurfaces carry weak carrollian structures") {
  for (std::size_t d = 2; d <= 4; ++d) {
    for (auto kind : null_kinds) {
      auto nr = null_hypersurface(kind, d, 1.5);
      CAPTURE(to_string(kind));
      CHECK(nr.surface.samples.size() == 16);
      for (std::size_t k = 0; k < nr.surface.samples.size(); ++k) {
        const Vec& x = nr.surface.points[k];
        CHECK(level_residual(nr.surface, x) < 1e-12 * std::max(1.0, x.squaredNorm()));
        Vec xi = nr.surface.generator(nr.surface.samples[k]);
        CHECK(std::abs(xi.dot(nr.surface.metric.asDiagonal() * xi)) < 1e-12);
        for (const auto& f : nr.surface.levels) CHECK(std::abs(f.gradient(x).dot(xi)) < 1e-12 * (1 + x.norm()));
      }
      auto check = check_weak_carroll(nr.data, nr.surface.samples);
      CHECK(check.ok());
      CHECK(check.min_xi_norm > 0.1);
    }
  }
}

TEST_CASE("de Sitter-Carroll samples satisfy both level functions") {
  auto nr = null_hypersurface(NullKind::DeSitterCarroll, 3, 2);
  CHECK(nr.surface.levels.size() == 2);
  for (const auto& x : nr.surface.points) {
    CHECK(std::abs(nr.surface.levels[0].value(x)) < 1e-12);
    CHECK(std::abs(nr.surface.levels[1].value(x)) < 1e-12);
  }
}

TEST_CASE("null second fundamental forms") {
  SUBCASE("hyperplane and the (anti) de Sitter-Carroll surfaces are totally geodesic") {
    for (auto kind : {NullKind::Hyperplane, NullKind::DeSitterCarroll, NullKind::AntiDeSitterCarroll}) {
      auto nr = null_hypersurface(kind, 3);
      for (std::size_t k = 0; k < 3; ++k) {
        // finite-difference oracle for ∂(ξ∘φ)
        const Vec& p = nr.surface.samples[k];
        Mat dxi = fd_jacobian(nr.surface.generator, p);
        Mat b = dxi.transpose() * nr.surface.metric.asDiagonal() * nr.surface.chart_jacobian(p);
        CHECK(b.cwiseAbs().maxCoeff() < 1e-9);
        CHECK(weingarten(nr.surface, p).second.cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
  SUBCASE("lightcone B = h / r") {
    auto nr = null_hypersurface(NullKind::Lightcone, 3);
    for (std::size_t k = 0; k < 3; ++k) {
      const Vec& q = nr.surface.samples[k];
      Mat dxi = fd_jacobian(nr.surface.generator, q);
      Mat fd_b = dxi.transpose() * nr.surface.metric.asDiagonal() * fd_jacobian(nr.surface.chart, q);
      auto w = weingarten(nr.surface, q);
      Mat h_over_r = (Mat::Identity(4, 4) - q.normalized() * q.normalized().transpose()) / q.norm();
      CHECK((w.second - fd_b).cwiseAbs().maxCoeff() < 1e-7);
      CHECK((w.second - h_over_r).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((w.h / q.norm() - w.second).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("classification of the null hypersurfaces") {
  for (std::size_t d = 2; d <= 4; ++d) {
    auto hyper = classify_hypersurface(null_hypersurface(NullKind::Hyperplane, d).surface);
    auto cone = classify_hypersurface(null_hypersurface(NullKind::Lightcone, d).surface);
    auto ds = classify_hypersurface(null_hypersurface(NullKind::DeSitterCarroll, d, 1.3).surface);
    auto ads = classify_hypersurface(null_hypersurface(NullKind::AntiDeSitterCarroll, d, 0.7).surface);
    CHECK(hyper.cls == CarrollTorsionClass::TotallyGeodesic);
    CHECK(cone.cls == CarrollTorsionClass::TotallyUmbilical);
    CHECK(ds.cls == CarrollTorsionClass::TotallyGeodesic);
    CHECK(ads.cls == CarrollTorsionClass::TotallyGeodesic);
    for (const auto* c : {&hyper, &cone, &ds, &ads}) {
      CHECK(c->per_sample.size() == 16);
      CHECK(c->symmetric);
      CHECK(c->lie_verified);
    }
    for (double t : cone.traces) CHECK(std::abs(t) > 0.1);
  }
}

TEST_CASE("the Euler generator of the lightcone has B = h") {
  auto nr = null_hypersurface(NullKind::Lightcone, 3, 1, 16, 0, LightconeGenerator::Euler);
  for (const auto& q : nr.surface.samples) {
    auto w = weingarten(nr.surface, q);
    CHECK((w.second - w.h).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(classify_hypersurface(nr.surface).cls == CarrollTorsionClass::TotallyUmbilical);
}

TEST_CASE("classification is unchanged by rescaling the generator") {
  std::vector<std::pair<std::function<double(const Vec&)>, std::function<Vec(const Vec&)>>> scalings = {
      {[](const Vec& x) { return 1 + 0.5 * x(1) * x(1); },
       [](const Vec& x) -> Vec {
         Vec g = Vec::Zero(x.size());
         g(1) = x(1);
         return g;
       }},
      {[](const Vec& x) { return std::exp(0.3 * x(0)); },
       [](const Vec& x) -> Vec {
         Vec g = Vec::Zero(x.size());
         g(0) = 0.3 * std::exp(0.3 * x(0));
         return g;
       }},
      {[](const Vec& x) { return 2 + std::sin(x(2)); },
       [](const Vec& x) -> Vec {
         Vec g = Vec::Zero(x.size());
         g(2) = std::cos(x(2));
         return g;
       }},
  };
  for (auto kind : null_kinds) {
    auto nr = null_hypersurface(kind, 3);
    auto base = classify_hypersurface(nr.surface);
    for (const auto& [f, grad] : scalings) {
      auto scaled = rescale_generator(nr.surface, f, grad);
      auto c = classify_hypersurface(scaled);
      CAPTURE(to_string(kind));
      CHECK(c.cls == base.cls);
      CHECK(c.symmetric);
      CHECK(c.lie_verified);
      // the generator derivative agrees with finite differences
      const Vec& p = scaled.samples[1];
      CHECK((scaled.generator_jacobian(p) - fd_jacobian(scaled.generator, p)).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("weingarten rejects degenerate charts and points off the surface") {
  auto cone = null_hypersurface(NullKind::Lightcone, 3).surface;
  CHECK_THROWS_AS(weingarten(cone, Vec::Zero(4)), DegenerateChart);
  auto shifted = null_hypersurface(NullKind::Hyperplane, 3).surface;
  auto chart = shifted.chart;
  shifted.chart = [chart](const Vec& p) -> Vec {
    Vec x = chart(p);
    x(0) += 1;
    return x;
  };
  CHECK_THROWS_AS(weingarten(shifted, shifted.samples[0]), NotOnHypersurface);
}

TEST_CASE("sample CSV output is deterministic") {
  auto nr = null_hypersurface(NullKind::Lightcone, 3);
  std::ostringstream a, b;
  write_samples_csv(a, nr.surface);
  write_samples_csv(b, null_hypersurface(NullKind::Lightcone, 3).surface);
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("index,x0,x1,x2,x3,x4,h0_0", 0) == 0);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find("TotallyUmbilical") != std::string::npos);
  }
  CHECK(rows == 16);
  std::ostringstream c;
  write_samples_csv(c, quadric(QuadricKind::DeSitter, 3, 1).surface);
  CHECK(c.str().find("(3,1)") != std::string::npos);
}

TEST_CASE("null reduction of flat Bargmann spacetime") {
  auto [g, z] = flat_bargmann(3);
  auto nc = null_reduction(g, z);
  CHECK(nc.base_dim == 4);
  // Z^flat = g(∂_v, ·) = −dt, and (t) is the fourth quotient coordinate
  CHECK(nc.tau == Vector{0, 0, 0, -1});
  Matrix lambda(4, 4);
  for (std::size_t a = 0; a < 3; ++a) lambda(a, a) = 1;
  CHECK(nc.lambda == lambda);
  CHECK(is_zero(nc.lambda * nc.tau));
  CHECK(inertia(nc.lambda) == Inertia{3, 0, 1});
  CHECK(classify_nc(nc.tau, Matrix(4, 4), 3) == NCTorsionClass::NC);
  // π*τ reproduces Z^flat
  CHECK(nc.projection.transpose() * nc.tau == g * z);
}

TEST_CASE("null reduction rejects bad data") {
  auto [g, z] = flat_bargmann(3);
  Vector t = z;
  t[3] = 1;
  CHECK_THROWS_AS(null_reduction(g, t), InvalidReductionData);
  CHECK_THROWS_AS(null_reduction(Matrix::identity(5), z), InvalidReductionData);
}

TEST_CASE("null reduction of a v-independent metric field") {
  // Σ dx² − 2 dt dv + (1 + x1²) dt²: Z = ∂_v stays null and Killing
  auto metric = [](const Vec& x) -> Mat {
    Mat g = Mat::Zero(5, 5);
    g.topLeftCorner(3, 3) = Mat::Identity(3, 3);
    g(3, 4) = g(4, 3) = -1;
    g(3, 3) = 1 + x(0) * x(0);
    return g;
  };
  Vec z = Vec::Unit(5, 4);
  auto pts = halton_points(16, 4, -1, 1);
  auto nc = null_reduction(metric, z, pts);
  for (const auto& y : pts) {
    Vec tau = nc.tau(y);
    CHECK((tau - vec({0, 0, 0, -1})).norm() < 1e-12);
    Mat lambda = nc.lambda(y);
    CHECK((lambda * tau).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(lambda);
    CHECK(es.eigenvalues()(0) > -1e-12);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-12);
    CHECK(es.eigenvalues()(1) > 0.5);
    CHECK(classify_nc(tau, exterior_derivative(nc.tau, y), 3) == NCTorsionClass::NC);
  }
  auto bad = [](const Vec& x) -> Mat {
    Mat g = Mat::Zero(5, 5);
    g.topLeftCorner(3, 3) = (1 + x(4)) * Mat::Identity(3, 3);
    g(3, 4) = g(4, 3) = -1;
    return g;
  };
  CHECK_THROWS_AS(null_reduction(bad, z, pts), InvalidReductionData);
}

TEST_CASE("bundle of scales of the round sphere") {
  for (std::size_t d = 2; d <= 4; ++d) {
    auto b = bundle_of_scales(d);
    CHECK(b.samples.size() == 16);
    auto c = check_bundle_of_scales(b);
    CAPTURE(d);
    CHECK(c.generator_error < 1e-10);
    CHECK(c.metric_error < 1e-10);
    CHECK(c.triangle_error < 1e-10);
    CHECK(c.lightcone_residual < 1e-10);
    CHECK(check_weak_carroll(b.q, b.samples).ok());
  }
  CHECK_THROWS(bundle_of_scales(1));
}

TEST_CASE("pullback metric at scale 2 is four times the round metric") {
  auto b = bundle_of_scales(3);
  Mat eta = Mat::Identity(4, 4);
  eta(0, 0) = -1;
  for (const Vec& w : {vec({0.3, -0.2}), vec({0.0, 0.0}), vec({-0.7, 0.4})}) {
    Vec p(3);
    p << 2, w(0), w(1);
    Mat j = fd_jacobian(b.to_lightcone, p);
    Mat pulled = j.transpose() * eta * j;
    CHECK((pulled.bottomRightCorner(2, 2) - 4 * round_metric(w)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(pulled.row(0).cwiseAbs().maxCoeff() < 1e-8);
    // ξ_Q = λ∂_λ is sent to the radial generator, the position vector on the cone
    CHECK((j * b.q.xi(p) - b.to_lightcone(p)).norm() < 1e-8);
  }
}
