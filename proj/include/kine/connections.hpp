#pragma once

// Invariant connections on reductive Klein pairs via Nomizu maps α: m × m → m.

#include "kine/klein.hpp"

#include <vector>

namespace kine {

class NonReductive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reductive Klein pair with its complement and the induced action of h on m.
struct ReductiveData {
  KleinPair pair;
  std::vector<Vector> h_basis;
  std::vector<Vector> m_basis;
  std::vector<Matrix> lambda;  // action of each h basis vector on m (m_basis coordinates)
  Matrix to_split;             // k coordinates -> (h coords, m coords)
  Vector h_part(const Vector& v) const;  // h coordinates
  Vector m_part(const Vector& v) const;  // m coordinates
  Vector from_m(const Vector& coords) const;
};

/// Throws NonReductive (e.g. for the lightcone).
ReductiveData reductive_data(const KleinPair& p);

/// α^c_ab = component c of α(m_a, m_b).
struct NomizuMap {
  Tensor3 alpha;
};

bool is_equivariant(const ReductiveData& r, const NomizuMap& nm);

struct NomizuSpace {
  std::vector<NomizuMap> basis;     // from the stacked linear system
  std::size_t dim_stacked = 0;
  std::size_t dim_intersection = 0;  // intersection of the per-generator solution spaces
};

NomizuSpace nomizu_space(const ReductiveData& r);

/// Θ^c_ab: component c of Θ(m_a, m_b) = α(m_a,m_b) − α(m_b,m_a) − [m_a,m_b]_m.
Tensor3 torsion(const ReductiveData& r, const NomizuMap& nm);

/// Ω(m_a, m_b) m_c has component e stored at ((a*n + b)*n + c)*n + e.
struct CurvatureTensor {
  std::size_t n = 0;
  std::vector<Rational> data;
  Rational operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t e) const {
    return data[((a * n + b) * n + c) * n + e];
  }
  bool is_zero() const;
};

CurvatureTensor curvature(const ReductiveData& r, const NomizuMap& nm);

NomizuMap canonical_connection(const ReductiveData& r);

/// span [m,m]_h closed under the action of h; returned as a subspace of k.
Subspace holonomy_ideal(const ReductiveData& r);

}  // namespace kine
