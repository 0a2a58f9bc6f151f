#include "kine/liealg.hpp"

#include <algorithm>

namespace kine {

Subspace::Subspace(std::size_t parent_dim, std::span<const Vector> spanning) : parent_dim_(parent_dim) {
  for (const auto& v : spanning)
    if (v.size() != parent_dim) throw DimensionError("subspace vector has wrong length");
  basis_ = span_basis(spanning, parent_dim);
  for (const auto& b : basis_) {
    std::size_t p = 0;
    while (sgn(b[p]) == 0) ++p;
    pivots_.push_back(p);
  }
}

Subspace Subspace::coordinate(std::size_t parent_dim, std::span<const std::size_t> indices) {
  std::vector<Vector> vs;
  for (std::size_t i : indices) vs.push_back(unit_vector(parent_dim, i));
  return Subspace(parent_dim, vs);
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != parent_dim_) throw DimensionError("vector length does not match subspace");
  // reduced echelon basis: v lies in the span iff v − Σ v[p_i] b_i vanishes
  Vector r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational c = r[pivots_[i]];
    if (sgn(c) == 0) continue;
    for (std::size_t k = pivots_[i]; k < parent_dim_; ++k)
      if (sgn(basis_[i][k]) != 0) r[k] -= c * basis_[i][k];
  }
  return is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const Vector& v) { return contains(v); });
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.parent_dim_ == b.parent_dim_ && a.basis_ == b.basis_;
}

LieAlgebra::LieAlgebra(Tensor3 f, std::vector<std::string> labels) : LieAlgebra(std::move(f), std::move(labels), true) {}

LieAlgebra LieAlgebra::unchecked(Tensor3 f, std::vector<std::string> labels) {
  return LieAlgebra(std::move(f), std::move(labels), false);
}

LieAlgebra::LieAlgebra(Tensor3 f, std::vector<std::string> labels, bool check)
    : f_(std::move(f)), labels_(std::move(labels)) {
  const std::size_t n = f_.dim();
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i + 1));
  if (labels_.size() != n) throw DimensionError("label count does not match dimension");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (f_(a, b, c) != -f_(b, a, c))
          throw NotALieAlgebra("structure constants not antisymmetric at [" + labels_[a] + "," + labels_[b] +
                               "] component " + labels_[c]);
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(f_(a, b, c)) != 0) table_[a * n + b].push_back({c, f_(a, b, c)});
  if (check) {
    Jacobiator j = jacobiator(*this);
    if (!j.is_lie) {
      const auto& v = j.nonzero.front();
      throw NotALieAlgebra("Jacobi identity fails on (" + labels_[v.a] + ", " + labels_[v.b] + ", " + labels_[v.c] +
                           ")");
    }
  }
}

std::size_t LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::out_of_range("no basis element labelled '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw DimensionError("bracket: vector length does not match algebra dimension");
  Vector out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(y[b]) == 0) continue;
      const auto& terms = table_[a * n + b];
      if (terms.empty()) continue;
      Rational w = x[a] * y[b];
      for (const auto& t : terms) out[t.index] += w * t.value;
    }
  }
  return out;
}

Vector LieAlgebra::bracket_basis(std::size_t a, std::size_t b) const {
  Vector out(dim());
  for (const auto& t : basis_bracket(a, b)) out[t.index] = t.value;
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : basis_bracket(a, b)) m(t.index, b) += x[a] * t.value;
  }
  return m;
}

Matrix LieAlgebra::ad_basis(std::size_t a) const { return ad(unit_vector(dim(), a)); }

namespace {

// Accumulates [e_a, [e_b, e_c]] into out.
void add_nested(const LieAlgebra& alg, std::size_t a, std::size_t b, std::size_t c, Vector& out) {
  for (const auto& inner : alg.basis_bracket(b, c))
    for (const auto& outer : alg.basis_bracket(a, inner.index)) out[outer.index] += inner.value * outer.value;
}

}  // namespace

Jacobiator jacobiator(const LieAlgebra& alg) {
  Jacobiator j;
  const std::size_t n = alg.dim();
  Vector acc(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        for (auto& x : acc) x = 0;
        add_nested(alg, a, b, c, acc);
        add_nested(alg, b, c, a, acc);
        add_nested(alg, c, a, b, acc);
        if (!is_zero(acc)) {
          j.is_lie = false;
          j.nonzero.push_back({a, b, c, acc});
        }
      }
  return j;
}

Subspace derived_subalgebra(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<Vector> brackets;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!alg.basis_bracket(a, b).empty()) brackets.push_back(alg.bracket_basis(a, b));
  return Subspace(n, brackets);
}

Subspace center(const LieAlgebra& alg) {
  // x in center iff sum_a x^a f^c_{ab} = 0 for all b, c.
  const std::size_t n = alg.dim();
  std::vector<Vector> rows;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) {
      Vector r(n);
      bool any = false;
      for (std::size_t a = 0; a < n; ++a) {
        r[a] = alg.structure_constants()(a, b, c);
        any = any || sgn(r[a]) != 0;
      }
      if (any) rows.push_back(std::move(r));
    }
  if (rows.empty()) return Subspace(n, fixed_subspace({}, n));
  return Subspace(n, kernel(Matrix::from_rows(rows, n)));
}

Matrix killing_form(const LieAlgebra& alg) {
  const std::size_t n = alg.dim();
  std::vector<Matrix> ads;
  for (std::size_t a = 0; a < n; ++a) ads.push_back(alg.ad_basis(a));
  Matrix k(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Rational t = 0;
      // tr(ad_a ad_b) = sum_{i,j} (ad_a)_{ij} (ad_b)_{ji}
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj)
          if (sgn(ads[a](i, jj)) != 0 && sgn(ads[b](jj, i)) != 0) t += ads[a](i, jj) * ads[b](jj, i);
      k(a, b) = t;
      k(b, a) = t;
    }
  return k;
}

std::size_t killing_rank(const LieAlgebra& alg) { return rank(killing_form(alg)); }

Subspace generated_subalgebra(const LieAlgebra& alg, std::span<const Vector> generators) {
  const std::size_t n = alg.dim();
  std::vector<Vector> current(generators.begin(), generators.end());
  Subspace s(n, current);
  while (true) {
    std::vector<Vector> candidates = s.basis();
    for (const auto& x : s.basis())
      for (const auto& y : s.basis()) candidates.push_back(alg.bracket(x, y));
    Subspace next(n, candidates);
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

bool is_subalgebra(const LieAlgebra& alg, const Subspace& s) {
  const auto& b = s.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!s.contains(alg.bracket(b[i], b[j]))) return false;
  return true;
}

bool is_ideal(const LieAlgebra& alg, const Subspace& s) {
  for (std::size_t a = 0; a < alg.dim(); ++a)
    for (const auto& v : s.basis())
      if (!s.contains(alg.bracket(unit_vector(alg.dim(), a), v))) return false;
  return true;
}

std::vector<Vector> generating_set(const LieAlgebra& alg, const Subspace& s) {
  std::vector<Vector> gens;
  Subspace generated = Subspace::zero(alg.dim());
  for (const auto& v : s.basis()) {
    if (generated.contains(v)) continue;
    gens.push_back(v);
    generated = generated_subalgebra(alg, gens);
    if (generated.dim() == s.dim()) break;
  }
  return gens;
}

QuotientMap::QuotientMap(const Subspace& sub) : parent_dim_(sub.parent_dim()), echelon_(sub.basis()) {
  std::vector<bool> pivot(parent_dim_, false);
  for (const auto& row : echelon_) {
    auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return sgn(x) != 0; });
    std::size_t p = static_cast<std::size_t>(it - row.begin());
    pivots_.push_back(p);
    pivot[p] = true;
  }
  for (std::size_t i = 0; i < parent_dim_; ++i)
    if (!pivot[i]) complement_.push_back(i);
}

Vector QuotientMap::project(const Vector& v) const {
  if (v.size() != parent_dim_) throw DimensionError("quotient projection: wrong vector length");
  Vector r = v;
  for (std::size_t i = 0; i < echelon_.size(); ++i) {
    Rational coeff = r[pivots_[i]];
    if (sgn(coeff) == 0) continue;
    for (std::size_t j = 0; j < parent_dim_; ++j)
      if (sgn(echelon_[i][j]) != 0) r[j] -= coeff * echelon_[i][j];
  }
  Vector q(complement_.size());
  for (std::size_t k = 0; k < complement_.size(); ++k) q[k] = r[complement_[k]];
  return q;
}

Vector QuotientMap::lift(const Vector& q) const {
  if (q.size() != complement_.size()) throw DimensionError("quotient lift: wrong vector length");
  Vector v(parent_dim_);
  for (std::size_t k = 0; k < complement_.size(); ++k) v[complement_[k]] = q[k];
  return v;
}

Matrix QuotientMap::matrix() const {
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < parent_dim_; ++i) cols.push_back(project(unit_vector(parent_dim_, i)));
  return Matrix::from_columns(cols, complement_.size());
}

Quotient quotient_by_ideal(const LieAlgebra& alg, const Subspace& ideal) {
  const std::size_t n = alg.dim();
  if (ideal.parent_dim() != n) throw DimensionError("ideal lives in a space of the wrong dimension");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < ideal.dim(); ++i)
      if (!ideal.contains(alg.bracket(unit_vector(n, a), ideal.basis()[i])))
        throw NotAnIdeal("not an ideal: [" + alg.labels()[a] + ", ideal basis vector " + std::to_string(i) +
                             "] leaves the subspace",
                         a, i);
  QuotientMap q(ideal);
  const std::size_t m = q.dim();
  Tensor3 f(m);
  std::vector<std::string> labels;
  for (std::size_t i : q.representatives()) labels.push_back(alg.labels()[i]);
  const auto& reps = q.representatives();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Vector image = q.project(alg.bracket_basis(reps[a], reps[b]));
      for (std::size_t c = 0; c < m; ++c) f(a, b, c) = image[c];
    }
  return {LieAlgebra::unchecked(std::move(f), std::move(labels)), std::move(q)};
}

LieAlgebra change_basis(const LieAlgebra& alg, const Matrix& g) {
  const std::size_t n = alg.dim();
  if (g.rows() != n || g.cols() != n) throw DimensionError("change_basis: matrix size does not match algebra");
  Matrix ginv = inverse(g);
  std::vector<Vector> cols;
  for (std::size_t a = 0; a < n; ++a) cols.push_back(g.column(a));
  Tensor3 f(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector image = ginv * alg.bracket(cols[a], cols[b]);
      for (std::size_t c = 0; c < n; ++c) {
        f(a, b, c) = image[c];
        f(b, a, c) = -image[c];
      }
    }
  return LieAlgebra::unchecked(std::move(f), alg.labels());
}

LieAlgebra direct_sum(const LieAlgebra& x, const LieAlgebra& y) {
  const std::size_t n = x.dim(), m = y.dim();
  Tensor3 f(n + m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : x.basis_bracket(a, b)) f(a, b, t.index) = t.value;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (const auto& t : y.basis_bracket(a, b)) f(n + a, n + b, n + t.index) = t.value;
  std::vector<std::string> labels = x.labels();
  labels.insert(labels.end(), y.labels().begin(), y.labels().end());
  return LieAlgebra(std::move(f), std::move(labels));
}

LieAlgebra abelian(std::size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return LieAlgebra(Tensor3(n), std::move(labels));
}

}  // namespace kine
