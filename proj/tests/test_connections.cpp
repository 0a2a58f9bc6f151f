#include "doctest.h"
#include "kine/connections.hpp"

using namespace kine;

namespace {

bool torsional(const std::string& tag) { return tag.rfind("torsional", 0) == 0; }

// m index of a label, using the m basis lifted from the quotient basis P1..Pd, H.
std::size_t m_index(const ReductiveData& r, const std::string& label) {
  const auto& labels = r.pair.k.labels();
  for (std::size_t j = 0; j < r.m_basis.size(); ++j) {
    const Vector& v = r.m_basis[j];
    std::size_t idx = r.pair.k.index_of(label);
    if (v == unit_vector(v.size(), idx)) return j;
  }
  throw std::out_of_range(label + " is not an m basis vector of " + labels.front());
}

}  // namespace

TEST_CASE("nomizu spaces agree when computed two ways") {
  for (const auto& row : klein_rows()) {
    if (row.tag == "lightcone") continue;
    auto r = reductive_data(build_klein(row.tag, 3));
    auto space = nomizu_space(r);
    CAPTURE(row.tag);
    CHECK(space.dim_stacked == space.dim_intersection);
    // so(V) for dim V >= 4 has no invariant 3-tensors on V, so the canonical connection is the only one
    if (row.section == GeometryClass::Lorentzian || row.section == GeometryClass::Riemannian)
      CHECK(space.dim_stacked == 0);
    else
      CHECK(space.dim_stacked > 0);
    for (const auto& nm : space.basis) CHECK(is_equivariant(r, nm));
    CHECK(is_equivariant(r, canonical_connection(r)));
  }
}

TEST_CASE("the lightcone admits no invariant connection") {
  CHECK_THROWS_AS(reductive_data(build_klein("lightcone", 3)), NonReductive);
}

TEST_CASE("canonical connection torsion is minus the m-part of the bracket") {
  for (std::size_t d = 3; d <= 4; ++d)
    for (const auto& row : klein_rows()) {
      if (row.tag == "lightcone") continue;
      auto r = reductive_data(build_klein(row.tag, d));
      Tensor3 theta = torsion(r, canonical_connection(r));
      const std::size_t n = r.m_basis.size();
      bool zero = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          Vector br = r.m_part(r.pair.k.bracket(r.m_basis[a], r.m_basis[b]));
          for (std::size_t c = 0; c < n; ++c) {
            CHECK(theta(a, b, c) == -br[c]);
            zero = zero && sgn(theta(a, b, c)) == 0;
          }
        }
      CAPTURE(row.tag);
      CHECK(zero == reductive_complement(r.pair).symmetric);
      CHECK(zero == !torsional(row.tag));
    }
}

TEST_CASE("torsion of the torsional galilean pairs") {
  auto r = reductive_data(build_klein("torsional-desitter-galilei", 3, {Rational(0), std::nullopt}));
  Tensor3 theta = torsion(r, canonical_connection(r));
  std::size_t h = m_index(r, "H");
  for (std::size_t a = 0; a < 3; ++a) {
    std::size_t pa = m_index(r, "P" + std::to_string(a + 1));
    for (std::size_t c = 0; c < 4; ++c) CHECK(theta(h, pa, c) == (c == pa ? Rational(-1) : Rational(0)));
  }
  auto r2 = reductive_data(build_klein("torsional-antidesitter-galilei", 3, {std::nullopt, Rational(2)}));
  Tensor3 theta2 = torsion(r2, canonical_connection(r2));
  std::size_t p1 = m_index(r2, "P1");
  // [H,P] = (1+χ²)B + 2χP, so Θ(H,P1) = −2χ P1 = −4 P1
  CHECK(theta2(m_index(r2, "H"), p1, p1) == -4);
}

TEST_CASE("curvature of the canonical connection") {
  auto gal = reductive_data(build_klein("galilei", 3));
  CHECK(curvature(gal, canonical_connection(gal)).is_zero());
  auto sph = reductive_data(build_klein("sphere", 3));
  auto omega = curvature(sph, canonical_connection(sph));
  CHECK_FALSE(omega.is_zero());
  // Ω(X,Y)Z = −[[X,Y]_h, Z]; for the sphere [P1,P2] = −L12 and [L12, P1] = −P2, so Ω(P1,P2)P1 = −P2
  std::size_t p1 = m_index(sph, "P1"), p2 = m_index(sph, "P2");
  for (std::size_t e = 0; e < 4; ++e) CHECK(omega(p1, p2, p1, e) == (e == p2 ? Rational(-1) : Rational(0)));
  // antisymmetry in the 2-form slot
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t e = 0; e < 4; ++e) CHECK(omega(a, b, c, e) == -omega(b, a, c, e));
}

TEST_CASE("holonomy ideals") {
  CHECK(holonomy_ideal(reductive_data(build_klein("minkowski", 3))).dim() == 0);
  CHECK(holonomy_ideal(reductive_data(build_klein("galilei", 3))).dim() == 0);
  auto sph = reductive_data(build_klein("sphere", 3));
  auto hol = holonomy_ideal(sph);
  CHECK(hol.dim() == 6);
  CHECK(sph.pair.h.contains(hol));
  CHECK(holonomy_ideal(reductive_data(build_klein("desitter", 4))).dim() == 10);
}

TEST_CASE("invariant tensors are annihilated by the holonomy ideal") {
  for (const auto& row : klein_rows()) {
    if (row.tag == "lightcone") continue;
    auto r = reductive_data(build_klein(row.tag, 3));
    auto hol = holonomy_ideal(r);
    auto sig = invariant_signature(r.pair);
    auto rep = isotropy(r.pair);
    for (const auto& x : hol.basis()) {
      Vector c = rep.splitting.h_coords(x);
      Matrix l(4, 4);
      for (std::size_t k = 0; k < c.size(); ++k) l = l + c[k] * rep.generators[k];
      for (const auto& v : sig.vectors) CHECK(is_zero(l * v));
      for (const auto& g : sig.metrics) CHECK((l.transpose() * g + g * l).is_zero());
    }
  }
}
