#include "kine/connections.hpp"

namespace kine {

ReductiveData reductive_data(const KleinPair& p) {
  Reductivity red = reductive_complement(p);
  if (!red.reductive) throw NonReductive("Klein pair '" + p.tag + "' is not reductive: " + red.witness);
  ReductiveData r;
  r.pair = p;
  r.h_basis = p.h.basis();
  r.m_basis = red.m_basis;
  std::vector<Vector> cols = r.h_basis;
  cols.insert(cols.end(), r.m_basis.begin(), r.m_basis.end());
  r.to_split = inverse(Matrix::from_columns(cols, p.k.dim()));
  for (const auto& x : r.h_basis) {
    std::vector<Vector> images;
    for (const auto& y : r.m_basis) images.push_back(r.m_part(p.k.bracket(x, y)));
    r.lambda.push_back(Matrix::from_columns(images, r.m_basis.size()));
  }
  return r;
}

Vector ReductiveData::h_part(const Vector& v) const {
  Vector all = to_split * v;
  return Vector(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(h_basis.size()));
}

Vector ReductiveData::m_part(const Vector& v) const {
  Vector all = to_split * v;
  return Vector(all.begin() + static_cast<std::ptrdiff_t>(h_basis.size()), all.end());
}

Vector ReductiveData::from_m(const Vector& coords) const {
  Vector v(pair.k.dim());
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(coords[i]) != 0) v = v + coords[i] * m_basis[i];
  return v;
}

namespace {

// Rows of the equivariance system for one generator; unknown α^c_ab at index (a*n + b)*n + c.
std::vector<Vector> equivariance_rows(const Matrix& l, std::size_t n) {
  auto idx = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };
  std::vector<Vector> rows;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        // λ(α(a,b))_c − α(λ a, b)_c − α(a, λ b)_c = 0
        Vector row(n * n * n);
        for (std::size_t k = 0; k < n; ++k) {
          row[idx(a, b, k)] += l(c, k);
          row[idx(k, b, c)] -= l(k, a);
          row[idx(a, k, c)] -= l(k, b);
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  return rows;
}

std::vector<Vector> orthogonal_complement(const std::vector<Vector>& basis, std::size_t dim) {
  if (basis.empty()) return fixed_subspace({}, dim);
  return kernel(Matrix::from_rows(basis, dim));
}

Tensor3 tensor_from_coords(const Vector& v, std::size_t n) {
  Tensor3 t(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) t(a, b, c) = v[(a * n + b) * n + c];
  return t;
}

Vector apply(const Tensor3& alpha, const Vector& x, const Vector& y) {
  const std::size_t n = alpha.dim();
  Vector out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(y[b]) == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(alpha(a, b, c)) != 0) out[c] += x[a] * y[b] * alpha(a, b, c);
    }
  }
  return out;
}

}  // namespace

bool is_equivariant(const ReductiveData& r, const NomizuMap& nm) {
  const std::size_t n = r.m_basis.size();
  for (const auto& l : r.lambda)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Vector ea = unit_vector(n, a), eb = unit_vector(n, b);
        Vector lhs = l * apply(nm.alpha, ea, eb);
        Vector rhs = apply(nm.alpha, l * ea, eb) + apply(nm.alpha, ea, l * eb);
        if (lhs != rhs) return false;
      }
  return true;
}

NomizuSpace nomizu_space(const ReductiveData& r) {
  const std::size_t n = r.m_basis.size(), nvars = n * n * n;
  NomizuSpace out;
  std::vector<Vector> all_rows;
  std::vector<Vector> complement_rows;  // union of the per-generator orthogonal complements
  for (const auto& l : r.lambda) {
    auto rows = equivariance_rows(l, n);
    all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    auto k = rows.empty() ? fixed_subspace({}, nvars) : kernel(Matrix::from_rows(rows, nvars));
    auto perp = orthogonal_complement(k, nvars);
    complement_rows.insert(complement_rows.end(), perp.begin(), perp.end());
  }
  auto stacked = all_rows.empty() ? fixed_subspace({}, nvars) : kernel(Matrix::from_rows(all_rows, nvars));
  auto intersection = orthogonal_complement(span_basis(complement_rows, nvars), nvars);
  out.dim_stacked = stacked.size();
  out.dim_intersection = intersection.size();
  for (const auto& v : stacked) out.basis.push_back({tensor_from_coords(v, n)});
  return out;
}

Tensor3 torsion(const ReductiveData& r, const NomizuMap& nm) {
  const std::size_t n = r.m_basis.size();
  Tensor3 theta(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector br = r.m_part(r.pair.k.bracket(r.m_basis[a], r.m_basis[b]));
      for (std::size_t c = 0; c < n; ++c) theta(a, b, c) = nm.alpha(a, b, c) - nm.alpha(b, a, c) - br[c];
    }
  return theta;
}

bool CurvatureTensor::is_zero() const {
  for (const auto& x : data)
    if (sgn(x) != 0) return false;
  return true;
}

CurvatureTensor curvature(const ReductiveData& r, const NomizuMap& nm) {
  const std::size_t n = r.m_basis.size();
  CurvatureTensor out{n, std::vector<Rational>(n * n * n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vector xy = r.pair.k.bracket(r.m_basis[a], r.m_basis[b]);
      Vector xy_m = r.m_part(xy), xy_hc = r.h_part(xy);
      Vector xy_h(r.pair.k.dim());
      for (std::size_t i = 0; i < xy_hc.size(); ++i)
        if (sgn(xy_hc[i]) != 0) xy_h = xy_h + xy_hc[i] * r.h_basis[i];
      Vector ea = unit_vector(n, a), eb = unit_vector(n, b);
      for (std::size_t c = 0; c < n; ++c) {
        Vector ec = unit_vector(n, c);
        Vector v = apply(nm.alpha, ea, apply(nm.alpha, eb, ec)) - apply(nm.alpha, eb, apply(nm.alpha, ea, ec)) -
                   apply(nm.alpha, xy_m, ec) - r.m_part(r.pair.k.bracket(xy_h, r.m_basis[c]));
        for (std::size_t e = 0; e < n; ++e) out.data[((a * n + b) * n + c) * n + e] = v[e];
      }
    }
  return out;
}

NomizuMap canonical_connection(const ReductiveData& r) { return {Tensor3(r.m_basis.size())}; }

Subspace holonomy_ideal(const ReductiveData& r) {
  const std::size_t n = r.pair.k.dim();
  std::vector<Vector> gens;
  for (std::size_t a = 0; a < r.m_basis.size(); ++a)
    for (std::size_t b = a + 1; b < r.m_basis.size(); ++b) {
      Vector hc = r.h_part(r.pair.k.bracket(r.m_basis[a], r.m_basis[b]));
      Vector v(n);
      for (std::size_t i = 0; i < hc.size(); ++i)
        if (sgn(hc[i]) != 0) v = v + hc[i] * r.h_basis[i];
      gens.push_back(std::move(v));
    }
  Subspace w(n, gens);
  while (true) {
    std::vector<Vector> more = w.basis();
    for (const auto& x : r.h_basis)
      for (const auto& y : w.basis()) more.push_back(r.pair.k.bracket(x, y));
    Subspace next(n, more);
    if (next.dim() == w.dim()) return w;
    w = std::move(next);
  }
}

}  // namespace kine
