#include "kine/catalog.hpp"

#include <algorithm>
#include <map>

namespace kine {

KinematicalBasis::KinematicalBasis(std::size_t d, bool with_z)
    : d_(d), with_z_(with_z), dim_(d * (d - 1) / 2 + 2 * d + 1 + (with_z ? 1 : 0)) {}

std::size_t KinematicalBasis::L(std::size_t a, std::size_t b) const {
  if (a == b || a >= d_ || b >= d_) throw std::out_of_range("invalid rotation index");
  if (a > b) std::swap(a, b);
  // pairs (0,1),(0,2),...,(0,d-1),(1,2),...
  return a * d_ - a * (a + 1) / 2 + (b - a - 1);
}

std::size_t KinematicalBasis::Z() const {
  if (!with_z_) throw std::out_of_range("basis has no Z");
  return H() + 1;
}

std::vector<std::string> KinematicalBasis::labels() const {
  std::vector<std::string> out;
  const std::string sep = d_ >= 10 ? "," : "";
  for (std::size_t a = 0; a < d_; ++a)
    for (std::size_t b = a + 1; b < d_; ++b) out.push_back("L" + std::to_string(a + 1) + sep + std::to_string(b + 1));
  for (std::size_t a = 0; a < d_; ++a) out.push_back("B" + std::to_string(a + 1));
  for (std::size_t a = 0; a < d_; ++a) out.push_back("P" + std::to_string(a + 1));
  out.push_back("H");
  if (with_z_) out.push_back("Z");
  return out;
}

namespace {

void check_dimension(std::size_t d) {
  if (d < 3)
    throw OutOfScope("d = " + std::to_string(d) +
                     " is out of scope: only kinematical algebras existing in generic dimension d >= 3 are modelled");
}

struct TensorBuilder {
  Tensor3& f;
  // Adds val * e_k to [e_i, e_j] and keeps antisymmetry.
  void put(std::size_t i, std::size_t j, std::size_t k, const Rational& val) {
    if (sgn(val) == 0) return;
    f(i, j, k) += val;
    f(j, i, k) -= val;
  }
};

// Adds coeff * L_ab (with L_ab = -L_ba, L_aa = 0) to [e_i, e_j].
void put_l(TensorBuilder& tb, const KinematicalBasis& kb, std::size_t i, std::size_t j, std::size_t a, std::size_t b,
           const Rational& coeff) {
  if (a == b || sgn(coeff) == 0) return;
  tb.put(i, j, kb.L(a, b), a < b ? coeff : Rational(-coeff));
}

}  // namespace

Tensor3 kinematical_tensor(std::size_t d, const EquivariantCoeffs& c, const std::optional<BargmannExtension>& ext) {
  if (sgn(c.sigma) != 0) throw ParameterOutOfRange("the reserved coefficient sigma must be zero");
  KinematicalBasis kb(d, ext.has_value());
  Tensor3 f(kb.dim());
  TensorBuilder tb{f};
  // [L_ab, L_cd] = δ_bc L_ad − δ_ac L_bd − δ_bd L_ac + δ_ad L_bc
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      auto [a, b] = pairs[p];
      auto [cc, dd] = pairs[q];
      std::size_t i = kb.L(a, b), j = kb.L(cc, dd);
      if (b == cc) put_l(tb, kb, i, j, a, dd, 1);
      if (a == cc) put_l(tb, kb, i, j, b, dd, -1);
      if (b == dd) put_l(tb, kb, i, j, a, cc, -1);
      if (a == dd) put_l(tb, kb, i, j, b, cc, 1);
    }
  // [L_ab, V_c] = δ_bc V_a − δ_ac V_b for V = B, P
  for (auto [a, b] : pairs) {
    std::size_t i = kb.L(a, b);
    tb.put(i, kb.B(b), kb.B(a), 1);
    tb.put(i, kb.B(a), kb.B(b), -1);
    tb.put(i, kb.P(b), kb.P(a), 1);
    tb.put(i, kb.P(a), kb.P(b), -1);
  }
  for (std::size_t a = 0; a < d; ++a) {
    tb.put(kb.H(), kb.B(a), kb.B(a), c.hb_b);
    tb.put(kb.H(), kb.B(a), kb.P(a), c.hb_p);
    tb.put(kb.H(), kb.P(a), kb.B(a), c.hp_b);
    tb.put(kb.H(), kb.P(a), kb.P(a), c.hp_p);
    tb.put(kb.B(a), kb.P(a), kb.H(), c.bp_h);
    if (ext) tb.put(kb.B(a), kb.P(a), kb.Z(), 1);
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b) continue;
      put_l(tb, kb, kb.B(a), kb.P(b), a, b, c.bp_l);
      if (a < b) {
        put_l(tb, kb, kb.B(a), kb.B(b), a, b, c.bb_l);
        put_l(tb, kb, kb.P(a), kb.P(b), a, b, c.pp_l);
      }
    }
  }
  if (ext) tb.put(kb.H(), kb.Z(), kb.Z(), ext->hz);
  return f;
}

LieAlgebra assemble(std::size_t d, const EquivariantCoeffs& c, const std::optional<BargmannExtension>& ext) {
  KinematicalBasis kb(d, ext.has_value());
  return LieAlgebra::unchecked(kinematical_tensor(d, c, ext), kb.labels());
}

const std::vector<std::string>& kinematical_tags() {
  static const std::vector<std::string> tags{"s",  "g",        "n0",        "n+",        "n-",      "c",
                                             "iso(d,1)", "iso(d+1)", "so(d+1,1)", "so(d,2)", "so(d+2)"};
  return tags;
}

namespace {

void require_no_params(const std::string& tag, const FamilyParams& p) {
  if (p.gamma || p.chi) throw ParameterOutOfRange("tag " + tag + " takes no parameters");
}

Rational require_gamma(const std::string& tag, const FamilyParams& p, bool allow_one) {
  if (!p.gamma || p.chi) throw ParameterOutOfRange("tag " + tag + " requires exactly the parameter gamma");
  const Rational& g = *p.gamma;
  if (g < -1 || g > 1 || (!allow_one && g == 1))
    throw ParameterOutOfRange("gamma = " + to_string(g) + " outside " + (allow_one ? "[-1,1]" : "[-1,1)"));
  return g;
}

Rational require_chi(const std::string& tag, const FamilyParams& p) {
  if (!p.chi || p.gamma) throw ParameterOutOfRange("tag " + tag + " requires exactly the parameter chi");
  if (*p.chi < 0) throw ParameterOutOfRange("chi = " + to_string(*p.chi) + " is negative");
  return *p.chi;
}

}  // namespace

EquivariantCoeffs canonical_coeffs(const std::string& tag, const FamilyParams& params) {
  EquivariantCoeffs c{};
  if (tag == "n+") {
    c.hb_b = require_gamma(tag, params, true);
    c.hp_p = 1;
    return c;
  }
  if (tag == "n-") {
    Rational chi = require_chi(tag, params);
    c.hb_b = chi;
    c.hb_p = 1;
    c.hp_b = -1;
    c.hp_p = chi;
    return c;
  }
  if (std::find(kinematical_tags().begin(), kinematical_tags().end(), tag) == kinematical_tags().end())
    throw UnknownTag("unknown kinematical tag '" + tag + "'");
  require_no_params(tag, params);
  if (tag == "g") {
    c.hb_p = -1;
  } else if (tag == "n0") {
    c.hb_b = 1;
    c.hb_p = 1;
    c.hp_p = 1;
  } else if (tag == "c") {
    c.bp_h = 1;
  } else if (tag == "iso(d,1)" || tag == "iso(d+1)") {
    Rational eps = tag == "iso(d,1)" ? 1 : -1;
    c.hb_p = -eps;
    c.bb_l = eps;
    c.bp_h = 1;
  } else if (tag == "so(d+1,1)") {
    c.hb_b = 1;
    c.hp_p = -1;
    c.bp_h = 1;
    c.bp_l = 1;
  } else if (tag == "so(d,2)" || tag == "so(d+2)") {
    Rational eps = tag == "so(d,2)" ? 1 : -1;
    c.hb_p = -eps;
    c.hp_b = eps;
    c.bb_l = eps;
    c.bp_h = 1;
    c.pp_l = eps;
  }
  return c;
}

KinematicalAlgebra build(const std::string& tag, std::size_t d, const FamilyParams& params) {
  check_dimension(d);
  EquivariantCoeffs c = canonical_coeffs(tag, params);
  KinematicalBasis kb(d);
  LieAlgebra alg(kinematical_tensor(d, c), kb.labels());
  return {d, std::move(alg), tag, params, c};
}

KinematicalAlgebra build_iso(std::size_t d, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw ParameterOutOfRange("epsilon must be +1 or -1");
  return build(epsilon == 1 ? "iso(d,1)" : "iso(d+1)", d);
}

KinematicalAlgebra build_so(std::size_t d, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw ParameterOutOfRange("epsilon must be +1 or -1");
  return build(epsilon == 1 ? "so(d,2)" : "so(d+2)", d);
}

const std::vector<std::string>& bargmann_tags() {
  static const std::vector<std::string> tags{"ghat", "nhat+", "nhat-", "b+", "b0", "b-"};
  return tags;
}

BargmannAlgebra build_bargmann(const std::string& tag, std::size_t d, const FamilyParams& params) {
  check_dimension(d);
  EquivariantCoeffs c{};
  c.hb_p = -1;  // [B,H] = P
  BargmannExtension ext{0};
  if (tag == "ghat") {
    require_no_params(tag, params);
  } else if (tag == "nhat+") {
    require_no_params(tag, params);
    c.hp_b = -1;
  } else if (tag == "nhat-") {
    require_no_params(tag, params);
    c.hp_b = 1;
  } else if (tag == "b+") {
    Rational g = require_gamma(tag, params, false);
    c.hp_b = g;
    c.hp_p = 1 + g;
    ext.hz = 1 + g;
  } else if (tag == "b0") {
    require_no_params(tag, params);
    c.hp_b = 1;
    c.hp_p = 2;
    ext.hz = 2;
  } else if (tag == "b-") {
    Rational chi = require_chi(tag, params);
    c.hp_b = 1 + chi * chi;
    c.hp_p = 2 * chi;
    ext.hz = 2 * chi;
  } else {
    throw UnknownTag("unknown Bargmann tag '" + tag + "'");
  }
  KinematicalBasis kb(d, true);
  LieAlgebra alg(kinematical_tensor(d, c, ext), kb.labels());
  return {d, std::move(alg), tag, params, c, ext};
}

std::pair<std::string, FamilyParams> bargmann_quotient_tag(const BargmannAlgebra& b) {
  if (b.tag == "ghat") return {"g", {}};
  if (b.tag == "nhat+") return {"n+", {Rational(-1), std::nullopt}};
  if (b.tag == "nhat-") return {"n-", {std::nullopt, Rational(0)}};
  if (b.tag == "b+") return {"n+", b.params};
  if (b.tag == "b0") return {"n0", {}};
  if (b.tag == "b-") return {"n-", b.params};
  throw UnknownTag("unknown Bargmann tag '" + b.tag + "'");
}

LieAlgebra poincare(std::size_t d, const Rational& c) {
  check_dimension(d);
  EquivariantCoeffs k{};
  k.bb_l = c * c;
  k.bp_h = 1;
  k.hb_p = -(c * c);  // [B,H] = c² P
  KinematicalBasis kb(d);
  return LieAlgebra(kinematical_tensor(d, k), kb.labels());
}

LieAlgebra ContractionWitness::at(const Rational& t) const {
  const std::size_t n = base.dim();
  Tensor3 f(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) f(a, b, c) = base(a, b, c) + t * slope(a, b, c);
  return LieAlgebra(std::move(f), KinematicalBasis(d).labels());
}

Contraction contract(ContractionMode mode, std::size_t d) {
  check_dimension(d);
  ContractionWitness w;
  w.d = d;
  EquivariantCoeffs base{}, slope{};
  std::string limit_tag;
  if (mode == ContractionMode::galilean_limit) {
    // B -> c^-2 B on the c-form brackets: [B,B] = t L, [B,P] = t H, [B,H] = P with t = c^-2
    base.hb_p = -1;
    slope.bb_l = 1;
    slope.bp_h = 1;
    w.parameter = "c^-2";
    limit_tag = "g";
  } else {
    // [B,B] = t L, [B,P] = H, [B,H] = t P with t = c^2
    base.bp_h = 1;
    slope.bb_l = 1;
    slope.hb_p = -1;
    w.parameter = "c^2";
    limit_tag = "c";
  }
  w.base = kinematical_tensor(d, base);
  // the rotation brackets belong to the base only
  Tensor3 full_slope = kinematical_tensor(d, slope);
  Tensor3 rotations = kinematical_tensor(d, {});
  const std::size_t n = full_slope.dim();
  w.slope = Tensor3(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) w.slope(a, b, c) = full_slope(a, b, c) - rotations(a, b, c);
  LieAlgebra at_zero = w.at(0);
  KinematicalAlgebra limit{d, at_zero, limit_tag, {}, extract_coeffs(at_zero, d)};
  return {std::move(limit), std::move(w)};
}

JacobiVarietyResult jacobi_variety_check(const EquivariantCoeffs& c, std::size_t d) {
  check_dimension(d);
  Jacobiator j = jacobiator(assemble(d, c));
  return {j.is_lie, std::move(j.nonzero)};
}

EquivariantCoeffs extract_coeffs(const LieAlgebra& alg, std::size_t d) {
  check_dimension(d);
  KinematicalBasis kb(d);
  if (alg.dim() != kb.dim())
    throw NotKinematical("dimension " + std::to_string(alg.dim()) + " is not that of a kinematical algebra with d = " +
                         std::to_string(d) + " (expected " + std::to_string(kb.dim()) + ")");
  const Tensor3& f = alg.structure_constants();
  EquivariantCoeffs c{};
  c.hb_b = f(kb.H(), kb.B(0), kb.B(0));
  c.hb_p = f(kb.H(), kb.B(0), kb.P(0));
  c.hp_b = f(kb.H(), kb.P(0), kb.B(0));
  c.hp_p = f(kb.H(), kb.P(0), kb.P(0));
  c.bb_l = f(kb.B(0), kb.B(1), kb.L(0, 1));
  c.bp_h = f(kb.B(0), kb.P(0), kb.H());
  c.bp_l = f(kb.B(0), kb.P(1), kb.L(0, 1));
  c.pp_l = f(kb.P(0), kb.P(1), kb.L(0, 1));
  Tensor3 expected = kinematical_tensor(d, c);
  const auto labels = kb.labels();
  const std::size_t n = kb.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t k = 0; k < n; ++k)
        if (f(a, b, k) != expected(a, b, k))
          throw NotKinematical("bracket [" + labels[a] + "," + labels[b] + "] has component " + to_string(f(a, b, k)) +
                               " along " + labels[k] + ", but the rotation-equivariant form requires " +
                               to_string(expected(a, b, k)));
  return c;
}

namespace {

Matrix ad_h_block(const EquivariantCoeffs& c) { return Matrix{{c.hb_b, c.hp_b}, {c.hb_p, c.hp_p}}; }
Matrix form_block(const EquivariantCoeffs& c) { return Matrix{{c.bb_l, c.bp_l}, {c.bp_l, c.pp_l}}; }

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// x, y rational with x² + y² = a, found by search over integer representations of num*den.
std::optional<std::pair<Rational, Rational>> sum_of_two_squares(const Rational& a, std::string& note) {
  if (a <= 0) return std::nullopt;
  mpz_class n = a.get_num() * a.get_den();
  const mpz_class limit("1000000000000");
  if (n > limit) {
    note = "sum-of-two-squares search skipped: " + n.get_str() + " exceeds the search bound";
    return std::nullopt;
  }
  mpz_class x = 0, rest, root;
  while (x * x <= n) {
    rest = n - x * x;
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      Rational xr(x, a.get_den()), yr(root, a.get_den());
      xr.canonicalize();
      yr.canonicalize();
      return std::make_pair(xr, yr);
    }
    ++x;
  }
  return std::nullopt;
}

Rational form(const Matrix& s, const Vector& x, const Vector& y) { return dot(x, s * y); }

std::string classify_ad_h(const Matrix& m) {
  if (m.is_zero()) return "zero";
  Rational t = m.trace(), det = determinant(m), disc = t * t - 4 * det;
  if (sgn(disc) > 0) return "real-split";
  if (sgn(disc) < 0) return "complex";
  if (m(0, 1) == 0 && m(1, 0) == 0 && m(0, 0) == m(1, 1)) return "scalar";
  return sgn(t) == 0 ? "nilpotent" : "jordan";
}

// Data of a successful normalisation: canonical tag, parameters, (B,P)-plane change A and H scale s.
struct Normal {
  std::string tag;
  FamilyParams params;
  std::optional<Matrix> a;
  Rational s;
  std::vector<std::string> notes;
  bool found = true;
};

Matrix columns2(const Vector& u1, const Vector& u2) { return Matrix{{u1[0], u2[0]}, {u1[1], u2[1]}}; }

Vector eigenvector(const Matrix& m, const Rational& lambda) {
  Matrix shifted = m - lambda * Matrix::identity(2);
  auto k = kernel(shifted);
  if (k.empty()) throw std::logic_error("eigenvector: not an eigenvalue");
  return k.front();
}

Normal normalise_without_mu(const Matrix& m) {
  Normal out;
  const std::string type = classify_ad_h(m);
  const Rational t = m.trace(), det = determinant(m), disc = t * t - 4 * det;
  const Vector e1{1, 0}, e2{0, 1};
  if (type == "zero") {
    out.tag = "s";
    out.a = Matrix::identity(2);
    out.s = 1;
    return out;
  }
  if (type == "scalar") {
    out.tag = "n+";
    out.params.gamma = Rational(1);
    out.a = Matrix::identity(2);
    out.s = 1 / m(0, 0);
    return out;
  }
  if (type == "nilpotent") {
    // s M u1 = -u2, s M u2 = 0
    Vector u1 = is_zero(m * e1) ? e2 : e1;
    Vector u2 = Rational(-1) * (m * u1);
    out.tag = "g";
    out.a = columns2(u1, u2);
    out.s = 1;
    return out;
  }
  if (type == "jordan") {
    // s M u1 = u1 + u2, s M u2 = u2 with s = 1/λ
    Rational lambda = t / 2;
    out.s = 1 / lambda;
    Matrix n = out.s * m - Matrix::identity(2);
    Vector u1 = is_zero(n * e1) ? e2 : e1;
    out.tag = "n0";
    out.a = columns2(u1, n * u1);
    out.notes.push_back("ad_H has a single Jordan block with nonzero eigenvalue");
    return out;
  }
  if (type == "real-split") {
    auto root = rational_sqrt(disc);
    out.tag = "n+";
    if (!root) {
      if (sgn(t) == 0) {
        out.params.gamma = Rational(-1);
        out.notes.push_back("eigenvalues of ad_H are ±sqrt(" + to_string(-det) +
                            "); the isomorphism requires an irrational basis change");
        return out;
      }
      out.found = false;
      out.notes.push_back("eigenvalues of ad_H are irrational; the family parameter gamma is irrational (out of scope)");
      return out;
    }
    Rational l1 = (t - *root) / 2, l2 = (t + *root) / 2;
    // the eigenvalue of largest modulus is normalised to 1; ties (γ = -1) take the positive one
    if (abs(l1) > abs(l2) || (abs(l1) == abs(l2) && l1 > 0)) std::swap(l1, l2);
    out.params.gamma = l1 / l2;
    out.s = 1 / l2;
    out.a = columns2(eigenvector(m, l1), eigenvector(m, l2));
    if (*out.params.gamma == -1) out.notes.push_back("gamma = -1 is the Newton-Hooke algebra n+");
    return out;
  }
  // complex eigenvalues a ± i b
  Rational re = t / 2;
  auto im = rational_sqrt(-disc / 4);
  out.tag = "n-";
  if (!im) {
    if (sgn(re) == 0) {
      out.params.chi = Rational(0);
      out.notes.push_back("eigenvalues of ad_H are ±i sqrt(" + to_string(det) +
                          "); the isomorphism requires an irrational basis change");
      return out;
    }
    out.found = false;
    out.notes.push_back("chi^2 = " + to_string(re * re / (-disc / 4)) + " is not a rational square (out of scope)");
    return out;
  }
  out.s = sgn(re) < 0 ? Rational(-1 / *im) : Rational(1 / *im);
  Rational chi = out.s * re;
  out.params.chi = chi;
  Matrix n = out.s * m - chi * Matrix::identity(2);
  out.a = columns2(e1, n * e1);
  if (sgn(chi) == 0) out.notes.push_back("chi = 0 is the Newton-Hooke algebra n-");
  return out;
}

Normal normalise_with_mu(const Matrix& s_form, const Rational& mu) {
  Normal out;
  const Vector e1{1, 0}, e2{0, 1};
  Inertia in = inertia(s_form);
  Matrix a;
  std::string irrational;
  if (in.zero == 2) {
    out.tag = "c";
    a = Matrix::identity(2);
  } else if (in.zero == 1) {
    int eps = in.positive == 1 ? 1 : -1;
    out.tag = eps == 1 ? "iso(d,1)" : "iso(d+1)";
    if (eps == 1) out.notes.push_back("iso(d,1) is the Poincare algebra");
    Vector u2 = kernel(s_form).front();
    Vector v = sgn(form(s_form, e1, e1)) != 0 ? e1 : e2;
    Rational sigma = form(s_form, v, v);
    auto scale = rational_sqrt(eps / sigma);
    if (!scale) {
      irrational = "the nonzero value " + to_string(sigma) + " of the boost form is not a rational square up to sign";
    } else {
      a = columns2(*scale * v, u2);
    }
  } else if (in.positive == 1 && in.negative == 1) {
    out.tag = "so(d+1,1)";
    auto root = rational_sqrt(-determinant(s_form));
    if (!root) {
      irrational = "-det of the boost/translation form is " + to_string(-determinant(s_form)) +
                   ", not a rational square, so its null directions are irrational";
    } else {
      Vector u1;
      if (sgn(s_form(0, 0)) == 0) {
        u1 = e1;
      } else {
        u1 = Vector{(-s_form(0, 1) + *root) / s_form(0, 0), 1};
      }
      Vector v = sgn(form(s_form, u1, e1)) != 0 ? e1 : e2;
      Vector u2p = (1 / form(s_form, u1, v)) * v;
      Vector u2 = u2p - (form(s_form, u2p, u2p) / 2) * u1;
      a = columns2(u1, u2);
    }
  } else {
    int eps = in.positive == 2 ? 1 : -1;
    out.tag = eps == 1 ? "so(d,2)" : "so(d+2)";
    Matrix t = Rational(eps) * s_form;  // positive definite
    auto delta = rational_sqrt(determinant(t));
    if (!delta) {
      irrational = "the determinant " + to_string(determinant(t)) + " of the definite form is not a rational square";
    } else {
      // a·T(u,u) = (a x + b y)² + (δ y)² for u = (x, y)
      const Rational ta = t(0, 0), tb = t(0, 1);
      std::string note;
      auto xy = sum_of_two_squares(ta, note);
      if (!xy) {
        irrational = note.empty() ? to_string(ta) + " is not a sum of two rational squares, so the definite form has "
                                                    "no rational orthonormal basis"
                                  : note;
      } else {
        auto [bx, by] = *xy;
        Rational y = by / *delta;
        Rational x = (bx - tb * y) / ta;
        Vector u1{x, y};
        Vector tu1 = t * u1;
        Vector u2 = (1 / *delta) * Vector{-tu1[1], tu1[0]};
        a = columns2(u1, u2);
      }
    }
  }
  if (!irrational.empty()) {
    out.notes.push_back(irrational + "; the isomorphism requires an irrational basis change");
    return out;
  }
  out.a = a;
  out.s = mu * determinant(a);
  return out;
}

}  // namespace

Fingerprint fingerprint(const LieAlgebra& alg, std::size_t d) {
  EquivariantCoeffs c = extract_coeffs(alg, d);
  return {derived_subalgebra(alg).dim(), center(alg).dim(), killing_rank(alg), classify_ad_h(ad_h_block(c))};
}

Matrix kinematical_basis_change(std::size_t d, const Matrix& a, const Rational& s, bool with_z,
                                const Rational& z_scale) {
  KinematicalBasis kb(d, with_z);
  Matrix g = Matrix::identity(kb.dim());
  for (std::size_t i = 0; i < d; ++i) {
    g(kb.B(i), kb.B(i)) = a(0, 0);
    g(kb.P(i), kb.B(i)) = a(1, 0);
    g(kb.B(i), kb.P(i)) = a(0, 1);
    g(kb.P(i), kb.P(i)) = a(1, 1);
  }
  g(kb.H(), kb.H()) = s;
  if (with_z) g(kb.Z(), kb.Z()) = z_scale;
  return g;
}

Identification identify(const LieAlgebra& alg, std::size_t d) {
  EquivariantCoeffs c = extract_coeffs(alg, d);
  Jacobiator j = jacobiator(alg);
  if (!j.is_lie) throw NotALieAlgebra("input violates the Jacobi identity");
  Identification out;
  out.invariants = fingerprint(alg, d);
  Matrix m = ad_h_block(c), s_form = form_block(c);
  if (sgn(c.bp_h) == 0 && !s_form.is_zero())
    throw std::logic_error("identify: a Lie algebra with [B,P] having no H part must have vanishing boost forms");
  Normal n = sgn(c.bp_h) == 0 ? normalise_without_mu(m) : normalise_with_mu(s_form, c.bp_h);
  out.found = n.found;
  out.tag = n.tag;
  out.params = n.params;
  out.notes = n.notes;
  if (!n.found || !n.a) return out;
  Matrix g = kinematical_basis_change(d, *n.a, n.s);
  out.isomorphism = g;
  out.verified = change_basis(alg, g) == build(out.tag, d, out.params).alg;
  if (!out.verified) out.notes.push_back("normalised constants do not match the catalogue row");
  return out;
}

}  // namespace kine
