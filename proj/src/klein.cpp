#include "kine/klein.hpp"

#include <algorithm>

namespace kine {

std::string to_string(GeometryClass c) {
  switch (c) {
    case GeometryClass::Lorentzian: return "Lorentzian";
    case GeometryClass::Riemannian: return "Riemannian";
    case GeometryClass::Galilean: return "Galilean";
    case GeometryClass::Carrollian: return "Carrollian";
    case GeometryClass::Other: return "Other";
  }
  return "Other";
}

KleinPair make_klein_pair(LieAlgebra k, Subspace h, std::string tag) {
  if (h.parent_dim() != k.dim()) throw DimensionError("subalgebra lives in a space of the wrong dimension");
  const auto& b = h.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!h.contains(k.bracket(b[i], b[j])))
        throw NotASubalgebra("h is not closed under the bracket: basis vectors " + std::to_string(i) + " and " +
                             std::to_string(j) + " bracket outside h");
  KleinPair p;
  p.k = std::move(k);
  p.h = std::move(h);
  p.tag = std::move(tag);
  return p;
}

const std::vector<KleinRow>& klein_rows() {
  using G = GeometryClass;
  static const std::vector<KleinRow> rows{
      {"minkowski", "Minkowski", "(iso(d,1), so(d,1))", G::Lorentzian, {}},
      {"desitter", "de Sitter", "(so(d+1,1), so(d,1))", G::Lorentzian, {}},
      {"antidesitter", "anti de Sitter", "(so(d,2), so(d,1))", G::Lorentzian, {}},
      {"euclidean", "euclidean", "(iso(d+1), so(d+1))", G::Riemannian, {}},
      {"sphere", "sphere", "(so(d+2), so(d+1))", G::Riemannian, {}},
      {"hyperbolic", "hyperbolic", "(so(d+1,1), so(d+1))", G::Riemannian, {}},
      {"galilei", "Galilei", "(g, iso(d))", G::Galilean, {}},
      {"desitter-galilei", "de Sitter-Galilei", "(n+_{gamma=-1}, iso(d))", G::Galilean, {}},
      {"torsional-desitter-galilei", "torsional de Sitter-Galilei", "(n+_{gamma in (-1,1)}, iso(d))", G::Galilean,
       "gamma"},
      {"torsional-desitter-galilei-n0", "torsional de Sitter-Galilei", "(n0, iso(d))", G::Galilean, {}},
      {"antidesitter-galilei", "anti de Sitter-Galilei", "(n-_{chi=0}, iso(d))", G::Galilean, {}},
      {"torsional-antidesitter-galilei", "torsional anti de Sitter-Galilei", "(n-_{chi>0}, iso(d))", G::Galilean,
       "chi"},
      {"carroll", "Carroll", "(c, iso(d))", G::Carrollian, {}},
      {"desitter-carroll", "de Sitter-Carroll", "(iso(d+1), iso(d))", G::Carrollian, {}},
      {"antidesitter-carroll", "anti de Sitter-Carroll", "(iso(d,1), iso(d))", G::Carrollian, {}},
      {"lightcone", "lightcone", "(so(d+1,1), iso(d))", G::Carrollian, {}},
  };
  return rows;
}

const KleinRow& klein_row(const std::string& tag) {
  for (const auto& r : klein_rows())
    if (r.tag == tag) return r;
  throw UnknownTag("unknown Klein geometry '" + tag + "'");
}

EquivariantCoeffs klein_coeffs(const std::string& tag, const FamilyParams& params) {
  const KleinRow& row = klein_row(tag);
  if (!row.parameter && (params.gamma || params.chi))
    throw ParameterOutOfRange("Klein geometry " + tag + " takes no parameters");
  EquivariantCoeffs c{};
  if (tag == "minkowski") {
    c.hb_p = -1, c.bb_l = 1, c.bp_h = 1;
  } else if (tag == "desitter") {
    c.hb_p = -1, c.hp_b = -1, c.bb_l = 1, c.bp_h = 1, c.pp_l = -1;
  } else if (tag == "antidesitter") {
    c.hb_p = -1, c.hp_b = 1, c.bb_l = 1, c.bp_h = 1, c.pp_l = 1;
  } else if (tag == "euclidean") {
    c.hb_p = 1, c.bb_l = -1, c.bp_h = 1;
  } else if (tag == "sphere") {
    c.hb_p = 1, c.hp_b = -1, c.bb_l = -1, c.bp_h = 1, c.pp_l = -1;
  } else if (tag == "hyperbolic") {
    c.hb_p = 1, c.hp_b = 1, c.bb_l = -1, c.bp_h = 1, c.pp_l = 1;
  } else if (tag == "galilei") {
    c.hb_p = -1;
  } else if (tag == "desitter-galilei") {
    c.hb_p = -1, c.hp_b = -1;
  } else if (tag == "torsional-desitter-galilei") {
    if (params.chi) throw ParameterOutOfRange("torsional de Sitter-Galilei takes gamma, not chi");
    Rational g = params.gamma.value_or(0);
    if (g <= -1 || g >= 1) throw ParameterOutOfRange("gamma = " + to_string(g) + " outside (-1,1)");
    c.hb_p = -1, c.hp_b = g, c.hp_p = 1 + g;
  } else if (tag == "torsional-desitter-galilei-n0") {
    c.hb_p = -1, c.hp_b = 1, c.hp_p = 2;
  } else if (tag == "antidesitter-galilei") {
    c.hb_p = -1, c.hp_b = 1;
  } else if (tag == "torsional-antidesitter-galilei") {
    if (params.gamma) throw ParameterOutOfRange("torsional anti de Sitter-Galilei takes chi, not gamma");
    Rational chi = params.chi.value_or(1);
    if (chi <= 0) throw ParameterOutOfRange("chi = " + to_string(chi) + " must be positive");
    c.hb_p = -1, c.hp_b = 1 + chi * chi, c.hp_p = 2 * chi;
  } else if (tag == "carroll") {
    c.bp_h = 1;
  } else if (tag == "desitter-carroll") {
    c.hp_b = -1, c.bp_h = 1, c.pp_l = -1;
  } else if (tag == "antidesitter-carroll") {
    c.hp_b = 1, c.bp_h = 1, c.pp_l = 1;
  } else if (tag == "lightcone") {
    c.hb_b = 1, c.hp_p = -1, c.bp_h = 1, c.bp_l = 1;
  }
  return c;
}

namespace {

Subspace rotations_and_boosts(const KinematicalBasis& kb) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < kb.rotation_count(); ++i) idx.push_back(i);
  for (std::size_t a = 0; a < kb.d(); ++a) idx.push_back(kb.B(a));
  return Subspace::coordinate(kb.dim(), idx);
}

}  // namespace

KleinPair build_klein(const std::string& tag, std::size_t d, const FamilyParams& params) {
  if (d < 3) throw OutOfScope("Klein geometries are modelled for d >= 3 only");
  EquivariantCoeffs c = klein_coeffs(tag, params);
  KinematicalBasis kb(d);
  LieAlgebra k(kinematical_tensor(d, c), kb.labels());
  KleinPair p = make_klein_pair(std::move(k), rotations_and_boosts(kb), tag);
  p.d = d;
  const KleinRow& row = klein_row(tag);
  if (row.parameter && *row.parameter == "gamma") p.params.gamma = params.gamma.value_or(0);
  if (row.parameter && *row.parameter == "chi") p.params.chi = params.chi.value_or(1);
  return p;
}

KleinPair build_bargmann_pair(const std::string& tag, std::size_t d, const FamilyParams& params) {
  BargmannAlgebra b = build_bargmann(tag, d, params);
  KinematicalBasis kb(d, true);
  KleinPair p = make_klein_pair(b.alg, rotations_and_boosts(kb), tag);
  p.d = d;
  p.params = params;
  return p;
}

Effectiveness is_effective(const KleinPair& p) {
  const std::size_t n = p.k.dim();
  Subspace w = p.h;
  while (w.dim() > 0) {
    // keep x ∈ w with [e_a, x] ∈ w for every basis element e_a
    QuotientMap q(w);
    const auto& wb = w.basis();
    std::vector<Vector> rows;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<Vector> images;
      for (const auto& v : wb) images.push_back(q.project(p.k.bracket(unit_vector(n, a), v)));
      for (std::size_t r = 0; r < q.dim(); ++r) {
        Vector row(wb.size());
        bool any = false;
        for (std::size_t j = 0; j < wb.size(); ++j) {
          row[j] = images[j][r];
          any = any || sgn(row[j]) != 0;
        }
        if (any) rows.push_back(std::move(row));
      }
    }
    if (rows.empty()) break;
    auto coeffs = kernel(Matrix::from_rows(rows, wb.size()));
    std::vector<Vector> next;
    for (const auto& c : coeffs) {
      Vector v(n);
      for (std::size_t j = 0; j < wb.size(); ++j) v = v + c[j] * wb[j];
      next.push_back(std::move(v));
    }
    Subspace w2(n, next);
    if (w2.dim() == w.dim()) break;
    w = std::move(w2);
  }
  return {w.dim() == 0, w};
}

Splitting::Splitting(const Subspace& h) : h_basis_(h.basis()), quotient_(h) {
  for (const auto& row : h_basis_) {
    auto it = std::find_if(row.begin(), row.end(), [](const Rational& x) { return sgn(x) != 0; });
    h_pivots_.push_back(static_cast<std::size_t>(it - row.begin()));
  }
}

Vector Splitting::h_coords(const Vector& v) const {
  // v - lift(m_coords(v)) lies in h; reduced echelon rows carry 1 at their own pivot and 0 at the others
  Vector rest = v - quotient_.lift(quotient_.project(v));
  Vector c(h_basis_.size());
  for (std::size_t i = 0; i < h_basis_.size(); ++i) c[i] = rest[h_pivots_[i]];
  return c;
}

Vector Splitting::m_rep(std::size_t j) const {
  return unit_vector(quotient_.parent_dim(), quotient_.representatives()[j]);
}

IsotropyRep isotropy(const KleinPair& p) {
  IsotropyRep rep;
  rep.splitting = Splitting(p.h);
  rep.h_basis = p.h.basis();
  const std::size_t m = rep.splitting.m_dim();
  for (std::size_t j = 0; j < m; ++j)
    rep.quotient_labels.push_back(p.k.labels()[rep.splitting.quotient().representatives()[j]] + "bar");
  for (const auto& x : rep.h_basis) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back(rep.splitting.m_coords(p.k.bracket(x, rep.splitting.m_rep(j))));
    rep.generators.push_back(Matrix::from_columns(cols, m));
  }
  return rep;
}

bool is_homomorphism(const KleinPair& p, const IsotropyRep& rep) {
  const auto& hb = rep.h_basis;
  for (std::size_t i = 0; i < hb.size(); ++i)
    for (std::size_t j = i + 1; j < hb.size(); ++j) {
      Vector c = rep.splitting.h_coords(p.k.bracket(hb[i], hb[j]));
      Matrix lhs(rep.splitting.m_dim(), rep.splitting.m_dim());
      for (std::size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) lhs = lhs + c[k] * rep.generators[k];
      if (lhs != commutator(rep.generators[i], rep.generators[j])) return false;
    }
  return true;
}

Reductivity reductive_complement(const KleinPair& p) {
  Reductivity out;
  Splitting sp(p.h);
  const std::size_t hd = sp.h_dim(), md = sp.m_dim(), n = p.k.dim();
  IsotropyRep rep = isotropy(p);
  // unknown φ: m0 -> h, stored as phi[r][j] = component r of φ(y_j) at index r * md + j
  auto var = [md](std::size_t r, std::size_t j) { return r * md + j; };
  const std::size_t nvars = hd * md;
  auto gens = generating_set(p.k, p.h);
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& x : gens) {
    Vector xc = sp.h_coords(x);
    Matrix lambda(md, md);
    for (std::size_t k = 0; k < hd; ++k)
      if (sgn(xc[k]) != 0) lambda = lambda + xc[k] * rep.generators[k];
    // ad_X on h in h coordinates
    Matrix adh(hd, hd);
    for (std::size_t s = 0; s < hd; ++s) {
      Vector img = sp.h_coords(p.k.bracket(x, sp.h_basis()[s]));
      for (std::size_t r = 0; r < hd; ++r) adh(r, s) = img[r];
    }
    for (std::size_t j = 0; j < md; ++j) {
      Vector xy_h = sp.h_coords(p.k.bracket(x, sp.m_rep(j)));
      // ad_X φ(y_j) − φ(λ_X y_j) = −[X, y_j]_h, componentwise in h
      for (std::size_t r = 0; r < hd; ++r) {
        Vector row(nvars);
        for (std::size_t s = 0; s < hd; ++s) row[var(s, j)] += adh(r, s);
        for (std::size_t i = 0; i < md; ++i) row[var(r, i)] -= lambda(i, j);
        rows.push_back(std::move(row));
        rhs.push_back(-xy_h[r]);
      }
    }
  }
  std::optional<Vector> phi = rows.empty() ? std::optional<Vector>(Vector(nvars))
                                           : solve(Matrix::from_rows(rows, nvars), rhs);
  if (!phi) {
    out.witness = "no h-stable complement: the linear system for the graph map m0 -> h (" + std::to_string(rows.size()) +
                  " equations in " + std::to_string(nvars) + " unknowns) is inconsistent";
    return out;
  }
  out.reductive = true;
  for (std::size_t j = 0; j < md; ++j) {
    Vector v = sp.m_rep(j);
    for (std::size_t r = 0; r < hd; ++r)
      if (sgn((*phi)[var(r, j)]) != 0) v = v + (*phi)[var(r, j)] * sp.h_basis()[r];
    out.m_basis.push_back(std::move(v));
  }
  out.m = Subspace(n, out.m_basis);
  out.symmetric = true;
  for (std::size_t i = 0; i < md && out.symmetric; ++i)
    for (std::size_t j = i + 1; j < md; ++j)
      if (!p.h.contains(p.k.bracket(out.m_basis[i], out.m_basis[j]))) {
        out.symmetric = false;
        break;
      }
  return out;
}

Matrix dual_action(const Matrix& lambda) { return Rational(-1) * lambda.transpose(); }

namespace {

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t n, bool strict) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = strict ? i + 1 : i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

// Matrix of T ↦ f(T) on symmetric/antisymmetric matrices in upper-triangle coordinates.
template <class F>
Matrix induced(std::size_t n, bool antisym, F f) {
  auto pairs = upper_pairs(n, antisym);
  std::vector<Vector> cols;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Vector coords(pairs.size());
    coords[k] = 1;
    Matrix t = antisym ? antisymmetric_from_coords(coords, n) : symmetric_from_coords(coords, n);
    Matrix img = f(t);
    Vector out(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q) out[q] = img(pairs[q].first, pairs[q].second);
    cols.push_back(std::move(out));
  }
  return Matrix::from_columns(cols, pairs.size());
}

}  // namespace

Matrix symmetric_from_coords(const Vector& coords, std::size_t n) {
  auto pairs = upper_pairs(n, false);
  if (coords.size() != pairs.size()) throw DimensionError("symmetric coordinates have the wrong length");
  Matrix t(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    t(pairs[k].first, pairs[k].second) = coords[k];
    t(pairs[k].second, pairs[k].first) = coords[k];
  }
  return t;
}

Matrix antisymmetric_from_coords(const Vector& coords, std::size_t n) {
  auto pairs = upper_pairs(n, true);
  if (coords.size() != pairs.size()) throw DimensionError("antisymmetric coordinates have the wrong length");
  Matrix t(n, n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    t(pairs[k].first, pairs[k].second) = coords[k];
    t(pairs[k].second, pairs[k].first) = -coords[k];
  }
  return t;
}

Matrix sym2_action(const Matrix& lambda) {
  return induced(lambda.rows(), false, [&](const Matrix& t) { return lambda * t + t * lambda.transpose(); });
}

Matrix sym2_dual_action(const Matrix& lambda) {
  return induced(lambda.rows(), false,
                 [&](const Matrix& g) { return Rational(-1) * (lambda.transpose() * g + g * lambda); });
}

Matrix wedge2_dual_action(const Matrix& lambda) {
  return induced(lambda.rows(), true,
                 [&](const Matrix& g) { return Rational(-1) * (lambda.transpose() * g + g * lambda); });
}

std::vector<Vector> probe_coefficients(std::size_t k) {
  std::vector<Vector> out;
  if (k == 0) return out;
  if (k <= 4) {
    std::vector<int> c(k, -2);
    while (true) {
      if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; })) {
        Vector v;
        for (int x : c) v.push_back(x);
        out.push_back(std::move(v));
      }
      std::size_t i = 0;
      while (i < k && c[i] == 2) c[i++] = -2;
      if (i == k) break;
      ++c[i];
    }
    return out;
  }
  for (std::size_t i = 0; i < k; ++i) out.push_back(unit_vector(k, i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      out.push_back(unit_vector(k, i) + unit_vector(k, j));
      out.push_back(unit_vector(k, i) - unit_vector(k, j));
    }
  return out;
}

namespace {

template <class T>
std::vector<T> probes(const std::vector<T>& basis) {
  std::vector<T> out;
  for (const auto& c : probe_coefficients(basis.size())) {
    T acc = Rational(0) * basis.front();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (sgn(c[i]) != 0) acc = acc + c[i] * basis[i];
    out.push_back(std::move(acc));
  }
  return out;
}

// Returns ±t so that it is positive semidefinite with one-dimensional radical, if possible.
std::optional<Matrix> corank_one_psd(const Matrix& t) {
  Inertia in = inertia(t);
  if (in.zero != 1) return std::nullopt;
  if (in.negative == 0) return t;
  if (in.positive == 0) return Rational(-1) * t;
  return std::nullopt;
}

}  // namespace

InvariantSignature invariant_signature(const KleinPair& p) {
  InvariantSignature sig;
  IsotropyRep rep = isotropy(p);
  const std::size_t n = rep.splitting.m_dim();
  std::vector<Matrix> on_v = rep.generators, on_vd, on_s2, on_s2d, on_w2d;
  for (const auto& l : rep.generators) {
    on_vd.push_back(dual_action(l));
    on_s2.push_back(sym2_action(l));
    on_s2d.push_back(sym2_dual_action(l));
    on_w2d.push_back(wedge2_dual_action(l));
  }
  const std::size_t s2 = n * (n + 1) / 2, w2 = n * (n - 1) / 2;
  sig.vectors = fixed_subspace(on_v, n);
  sig.covectors = fixed_subspace(on_vd, n);
  for (const auto& c : fixed_subspace(on_s2, s2)) sig.bivectors.push_back(symmetric_from_coords(c, n));
  for (const auto& c : fixed_subspace(on_s2d, s2)) sig.metrics.push_back(symmetric_from_coords(c, n));
  for (const auto& c : fixed_subspace(on_w2d, w2)) sig.two_forms.push_back(antisymmetric_from_coords(c, n));
  sig.dim_v = sig.vectors.size();
  sig.dim_v_dual = sig.covectors.size();
  sig.dim_sym2_v = sig.bivectors.size();
  sig.dim_sym2_v_dual = sig.metrics.size();
  sig.dim_wedge2_v_dual = sig.two_forms.size();

  std::vector<Matrix> metric_probes = sig.metrics.empty() ? std::vector<Matrix>{} : probes(sig.metrics);
  for (const auto& g : metric_probes) {
    Inertia in = inertia(g);
    if (in.zero != 0) continue;
    if ((in.negative == 1 && in.positive == n - 1) || (in.positive == 1 && in.negative == n - 1)) {
      sig.metric = in.negative == 1 ? g : Rational(-1) * g;
      sig.metric_inertia = inertia(*sig.metric);
      sig.cls = GeometryClass::Lorentzian;
      return sig;
    }
  }
  for (const auto& g : metric_probes) {
    Inertia in = inertia(g);
    if (in.zero == 0 && (in.negative == 0 || in.positive == 0)) {
      sig.metric = in.negative == 0 ? g : Rational(-1) * g;
      sig.metric_inertia = inertia(*sig.metric);
      sig.cls = GeometryClass::Riemannian;
      return sig;
    }
  }
  if (!sig.vectors.empty() && !sig.covectors.empty()) {
    sig.notes.push_back("invariant vector and covector both present (aristotelian); out of scope");
    sig.cls = GeometryClass::Other;
    return sig;
  }
  if (!sig.covectors.empty() && !sig.bivectors.empty()) {
    for (const auto& tau : probes(sig.covectors))
      for (const auto& l : probes(sig.bivectors)) {
        auto lam = corank_one_psd(l);
        if (lam && is_zero(*lam * tau)) {
          sig.tau = tau;
          sig.lambda = *lam;
          sig.cls = GeometryClass::Galilean;
          return sig;
        }
      }
  }
  if (!sig.vectors.empty() && !sig.metrics.empty()) {
    for (const auto& xi : probes(sig.vectors))
      for (const auto& g : metric_probes) {
        auto h = corank_one_psd(g);
        if (h && is_zero(*h * xi)) {
          sig.xi = xi;
          sig.h = *h;
          sig.cls = GeometryClass::Carrollian;
          return sig;
        }
      }
  }
  sig.notes.push_back("no lorentzian, riemannian, galilean or carrollian invariant structure found");
  return sig;
}

}  // namespace kine
