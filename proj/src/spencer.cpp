#include "kine/spencer.hpp"

#include <cmath>
#include <stdexcept>

namespace kine {

namespace {

Matrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

Vector flatten(const Matrix& m) { return Vector(m.entries().begin(), m.entries().end()); }

Matrix diagonal(std::size_t n, const Rational& first, const Rational& rest) {
  Matrix m(n, n);
  m(0, 0) = first;
  for (std::size_t i = 1; i < n; ++i) m(i, i) = rest;
  return m;
}

bool annihilates_form(const Matrix& x, const Matrix& form) {
  return (x.transpose() * form + form * x).is_zero();
}

// Coordinates of T(e_i,e_j) for any i,j, with the sign from antisymmetry.
Vector value_on(const Vector& t, std::size_t n, std::size_t i, std::size_t j) {
  Vector out = zero_vector(n);
  if (i == j) return out;
  std::size_t p = wedge2_index(n, std::min(i, j), std::max(i, j));
  for (std::size_t k = 0; k < n; ++k) out[k] = t[p * n + k];
  if (i > j)
    for (auto& x : out) x = -x;
  return out;
}

Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  return Matrix::from_columns(std::span<const Vector>(cols), rows);
}

}  // namespace

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Lorentzian: return "lorentzian";
    case StructureKind::Galilean: return "galilean";
    case StructureKind::Carrollian: return "carrollian";
  }
  return "";
}

StructureKind parse_structure_kind(const std::string& text) {
  if (text == "lorentzian") return StructureKind::Lorentzian;
  if (text == "galilean") return StructureKind::Galilean;
  if (text == "carrollian") return StructureKind::Carrollian;
  throw std::invalid_argument("unknown structure kind: " + text);
}

Vector StructureAlgebra::coordinates(const Matrix& x) const {
  const std::size_t nn = n() * n();
  if (x.rows() != n() || x.cols() != n()) throw DimensionError("matrix size does not match the structure algebra");
  std::vector<Vector> cols;
  for (const auto& g : generators) cols.push_back(flatten(g));
  auto c = solve(from_columns(cols, nn), flatten(x));
  if (!c) throw std::invalid_argument("matrix does not lie in the structure algebra");
  return *c;
}

StructureAlgebra structure_algebra(StructureKind kind, std::size_t d) {
  if (d < 1) throw std::invalid_argument("structure algebra needs d >= 1");
  const std::size_t n = d + 1;
  StructureAlgebra sa{kind, d, {}};
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) sa.generators.push_back(unit_matrix(n, a, b) - unit_matrix(n, b, a));
  for (std::size_t a = 1; a < n; ++a) {
    switch (kind) {
      case StructureKind::Lorentzian: sa.generators.push_back(unit_matrix(n, 0, a) + unit_matrix(n, a, 0)); break;
      case StructureKind::Galilean: sa.generators.push_back(unit_matrix(n, a, 0)); break;
      case StructureKind::Carrollian: sa.generators.push_back(unit_matrix(n, 0, a)); break;
    }
  }

  const Matrix eta = diagonal(n, -1, 1), spatial = diagonal(n, 0, 1);
  for (const auto& x : sa.generators) {
    bool ok = true;
    switch (kind) {
      case StructureKind::Lorentzian: ok = annihilates_form(x, eta); break;
      case StructureKind::Galilean:
        ok = is_zero(x.row(0)) && (x * spatial + spatial * x.transpose()).is_zero();
        break;
      case StructureKind::Carrollian: ok = is_zero(x.column(0)) && annihilates_form(x, spatial); break;
    }
    if (!ok) throw std::logic_error("structure algebra generator violates its defining invariants");
  }
  for (const auto& x : sa.generators)
    for (const auto& y : sa.generators) (void)sa.coordinates(commutator(x, y));
  return sa;
}

std::size_t wedge2_dim(std::size_t n) { return n * (n - 1) / 2; }

std::size_t wedge2_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) throw std::out_of_range("wedge2_index needs i < j < n");
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Matrix spencer_matrix(const StructureAlgebra& sa) {
  const std::size_t n = sa.n(), g = sa.dim();
  Matrix m(wedge2_dim(n) * n, n * g);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < g; ++j) {
      const std::size_t col = v * g + j;
      const Matrix& x = sa.generators[j];
      // κ = x ⊗ α^v: (∂κ)(e_i,e_k) = δ_iv x e_k − δ_kv x e_i
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
          const std::size_t p = wedge2_index(n, i, k);
          for (std::size_t c = 0; c < n; ++c) {
            Rational val = 0;
            if (i == v) val += x(c, k);
            if (k == v) val -= x(c, i);
            m(p * n + c, col) = val;
          }
        }
      }
    }
  }
  return m;
}

Matrix hom_v_g_action(const StructureAlgebra& sa, const Matrix& x) {
  const std::size_t n = sa.n(), g = sa.dim();
  std::vector<Vector> cols;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < g; ++j) {
      Vector out = zero_vector(n * g);
      // κ_w = δ_wv X_j, so (X·κ)_w = δ_wv [x, X_j] − x_{vw} X_j
      Vector br = sa.coordinates(commutator(x, sa.generators[j]));
      for (std::size_t l = 0; l < g; ++l) out[v * g + l] += br[l];
      for (std::size_t w = 0; w < n; ++w) out[w * g + j] -= x(v, w);
      cols.push_back(std::move(out));
    }
  }
  return from_columns(cols, n * g);
}

Matrix hom_wedge2_v_action(const Matrix& x) {
  const std::size_t n = x.rows(), dim = wedge2_dim(n) * n;
  std::vector<Vector> cols;
  for (std::size_t col = 0; col < dim; ++col) {
    Vector t = unit_vector(dim, col);
    Vector out = zero_vector(dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        Vector val = x * value_on(t, n, i, k);
        for (std::size_t l = 0; l < n; ++l) {
          if (sgn(x(l, i)) != 0) val = val - x(l, i) * value_on(t, n, l, k);
          if (sgn(x(l, k)) != 0) val = val - x(l, k) * value_on(t, n, i, l);
        }
        const std::size_t p = wedge2_index(n, i, k);
        for (std::size_t c = 0; c < n; ++c) out[p * n + c] = val[c];
      }
    }
    cols.push_back(std::move(out));
  }
  return from_columns(cols, dim);
}

CokernelProjector coker_projector(const StructureAlgebra& sa) {
  const std::size_t n = sa.n(), d = sa.d, dim = wedge2_dim(n) * n;
  CokernelProjector cp;
  std::vector<Vector> rows;
  if (sa.kind == StructureKind::Lorentzian) throw TrivialCokernel("the lorentzian Spencer cokernel is trivial");
  if (sa.kind == StructureKind::Galilean) {
    cp.model = "wedge2 V*";
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) rows.push_back(unit_vector(dim, wedge2_index(n, i, j) * n + 0));
    for (const auto& x : sa.generators) {
      Matrix act(rows.size(), rows.size());
      std::size_t q = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++q) {
          // (X·ω)(e_i,e_j) = −ω(X e_i, e_j) − ω(e_i, X e_j)
          std::size_t r = 0;
          for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t l = k + 1; l < n; ++l, ++r) {
              Rational v = 0;
              if (l == j) v -= x(k, i);
              if (k == j) v += x(l, i);
              if (k == i) v -= x(l, j);
              if (l == i) v += x(k, j);
              act(q, r) = v;
            }
          }
        }
      }
      cp.model_action.push_back(std::move(act));
    }
  } else {
    cp.model = "sym2 Ann e0";
    for (std::size_t a = 1; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        Vector r = zero_vector(dim);
        // h(T(e0,e_a), e_b) + h(T(e0,e_b), e_a) with h = Σ α^c α^c
        r[wedge2_index(n, 0, a) * n + b] += 1;
        r[wedge2_index(n, 0, b) * n + a] += 1;
        rows.push_back(std::move(r));
      }
    }
    for (const auto& x : sa.generators) {
      const std::size_t s = d * (d + 1) / 2;
      Matrix act(s, s);
      std::size_t r = 0;
      for (std::size_t a = 1; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b, ++r) {
          Vector coords = unit_vector(s, r);
          Matrix k(n, n);
          std::size_t q = 0;
          for (std::size_t c = 1; c < n; ++c)
            for (std::size_t e = c; e < n; ++e, ++q) k(c, e) = k(e, c) = coords[q];
          Matrix img = Rational(-1) * (x.transpose() * k + k * x);
          q = 0;
          for (std::size_t c = 1; c < n; ++c)
            for (std::size_t e = c; e < n; ++e, ++q) act(q, r) = img(c, e);
        }
      }
      cp.model_action.push_back(std::move(act));
    }
  }
  cp.model_map = Matrix::from_rows(std::span<const Vector>(rows), dim);

  std::vector<Vector> section_cols;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto pre = solve(cp.model_map, unit_vector(rows.size(), k));
    if (!pre) throw std::logic_error("cokernel model map is not surjective");
    section_cols.push_back(std::move(*pre));
  }
  cp.section = from_columns(section_cols, dim);
  cp.projector = cp.section * cp.model_map;

  if (!(cp.model_map * spencer_matrix(sa)).is_zero())
    throw std::logic_error("cokernel model map does not vanish on the image of the Spencer differential");
  return cp;
}

SpencerReport spencer_report(const StructureAlgebra& sa) {
  SpencerReport r;
  r.kind = sa.kind;
  r.d = sa.d;
  Matrix m = spencer_matrix(sa);
  r.dim_hom_v_h = m.cols();
  r.dim_hom_wedge2v_v = m.rows();
  r.rank = rank(m);
  r.dim_ker = r.dim_hom_v_h - r.rank;
  r.dim_coker = r.dim_hom_wedge2v_v - r.rank;
  if (r.dim_coker == 0)
    r.coker_projector = Matrix(m.rows(), m.rows());
  else
    r.coker_projector = coker_projector(sa).projector;
  return r;
}

std::string to_string(NCTorsionClass c) {
  switch (c) {
    case NCTorsionClass::NC: return "NC";
    case NCTorsionClass::TTNC: return "TTNC";
    case NCTorsionClass::TNC: return "TNC";
  }
  return "";
}

std::string to_string(CarrollTorsionClass c) {
  switch (c) {
    case CarrollTorsionClass::TotallyGeodesic: return "TotallyGeodesic";
    case CarrollTorsionClass::Minimal: return "Minimal";
    case CarrollTorsionClass::TotallyUmbilical: return "TotallyUmbilical";
    case CarrollTorsionClass::Generic: return "Generic";
  }
  return "";
}

NCTorsionClass classify_nc(const Vector& tau, const Matrix& dtau, std::size_t d) {
  const std::size_t n = d + 1;
  if (tau.size() != n || dtau.rows() != n || dtau.cols() != n)
    throw DimensionError("classify_nc: tau and dtau must have dimension d+1");
  if (is_zero(tau)) throw std::invalid_argument("classify_nc: tau must be nonzero");
  if (!(dtau + dtau.transpose()).is_zero()) throw std::invalid_argument("classify_nc: dtau must be antisymmetric");
  if (dtau.is_zero()) return NCTorsionClass::NC;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (dtau(i, j) * tau[k] + dtau(j, k) * tau[i] + dtau(k, i) * tau[j] != 0) return NCTorsionClass::TNC;
  return d == 1 ? NCTorsionClass::TNC : NCTorsionClass::TTNC;
}

NCTorsionClass classify_nc(const Eigen::VectorXd& tau, const Eigen::MatrixXd& dtau, std::size_t d,
                           double rel_tol) {
  const auto n = static_cast<Eigen::Index>(d + 1);
  if (tau.size() != n || dtau.rows() != n || dtau.cols() != n)
    throw DimensionError("classify_nc: tau and dtau must have dimension d+1");
  const double tn = tau.cwiseAbs().maxCoeff();
  if (tn == 0) throw std::invalid_argument("classify_nc: tau must be nonzero");
  const double dn = dtau.cwiseAbs().maxCoeff();
  if ((dtau + dtau.transpose()).cwiseAbs().maxCoeff() > rel_tol * std::max(dn, 1.0))
    throw std::invalid_argument("classify_nc: dtau must be antisymmetric");
  if (dn <= rel_tol * tn) return NCTorsionClass::NC;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j + 1; k < n; ++k) {
        double w = dtau(i, j) * tau(k) + dtau(j, k) * tau(i) + dtau(k, i) * tau(j);
        if (std::abs(w) > rel_tol * 3 * dn * tn) return NCTorsionClass::TNC;
      }
  return d == 1 ? NCTorsionClass::TNC : NCTorsionClass::TTNC;
}

CarrollTorsionClass classify_carroll(const Matrix& k, const Matrix& h, std::size_t d) {
  if (k.rows() != d || k.cols() != d || h.rows() != d || h.cols() != d)
    throw DimensionError("classify_carroll: K and h must be d x d");
  if (!is_symmetric(k)) throw std::invalid_argument("classify_carroll: K must be symmetric");
  if (!is_symmetric(h) || inertia(h).positive != d)
    throw std::invalid_argument("classify_carroll: h must be positive definite");
  if (k.is_zero()) return CarrollTorsionClass::TotallyGeodesic;
  if (d == 1) return CarrollTorsionClass::Generic;
  Rational f = k(0, 0) / h(0, 0);
  if (k == f * h) return CarrollTorsionClass::TotallyUmbilical;
  if ((inverse(h) * k).trace() == 0) return CarrollTorsionClass::Minimal;
  return CarrollTorsionClass::Generic;
}

CarrollTorsionClass classify_carroll(const Eigen::MatrixXd& k, const Eigen::MatrixXd& h, std::size_t d,
                                     double rel_tol) {
  const auto n = static_cast<Eigen::Index>(d);
  if (k.rows() != n || k.cols() != n || h.rows() != n || h.cols() != n)
    throw DimensionError("classify_carroll: K and h must be d x d");
  const double kn = k.cwiseAbs().maxCoeff(), hn = h.cwiseAbs().maxCoeff();
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > rel_tol * std::max(kn, 1.0))
    throw std::invalid_argument("classify_carroll: K must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
  if (es.eigenvalues().minCoeff() <= rel_tol * hn)
    throw std::invalid_argument("classify_carroll: h must be positive definite");
  if (kn <= rel_tol * hn) return CarrollTorsionClass::TotallyGeodesic;
  if (d == 1) return CarrollTorsionClass::Generic;
  Eigen::MatrixXd shape = h.ldlt().solve(k);
  const double f = shape.trace() / static_cast<double>(d);
  if ((k - f * h).cwiseAbs().maxCoeff() <= rel_tol * kn) return CarrollTorsionClass::TotallyUmbilical;
  if (std::abs(shape.trace()) <= rel_tol * shape.norm() * std::sqrt(static_cast<double>(d)))
    return CarrollTorsionClass::Minimal;
  return CarrollTorsionClass::Generic;
}

}  // namespace kine
