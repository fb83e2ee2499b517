#pragma once

#include <utility>
#include <vector>

#include "core.hpp"
#include "freecheck.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

namespace latwidth {

/// The linear maps relating a simplex to its d-lattice. `forward` sends the
/// source simplex (translated so base_vertex sits at 0) onto sigma_d;
/// `inverse` undoes it.
struct TransformRecord {
  RationalMatrix forward;
  RationalMatrix inverse;
  IntVector base_vertex;
};

/// M = A^{-1} Z^d for A = [v_1 - v_0, ..., v_d - v_0]. Stored as
/// (1/|det A|) * (sign(det A) * adj A) * Z^d, so [M : Z^d] = |det A| = d! vol.
inline std::pair<GeneralLattice, TransformRecord> lattice_from_simplex(const Simplex &s) {
  BigMatrix a = s.edge_matrix();
  BigInt det = determinant(a);
  require(det != 0, "degenerate simplex");
  BigMatrix adj = adjugate(a);
  if (det < 0)
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j) adj(i, j) = -adj(i, j);
  GeneralLattice m(to_int64(abs(det)), to_int(adj));
  TransformRecord t{inverse(a), RationalMatrix::from(a), s.vertices().front()};
  return {std::move(m), std::move(t)};
}

/// The inverse construction: for an integral basis B of M, psi = U * B^{-1}
/// maps M onto Z^d and sigma_d onto the simplex with vertices 0 and the
/// columns of psi. U is the unimodular transform putting psi in row Hermite
/// form, so equal lattices give identical simplices.
inline std::pair<Simplex, TransformRecord> simplex_from_lattice(const GeneralLattice &m) {
  const std::size_t d = static_cast<std::size_t>(m.dim());
  BigMatrix h = m.hermite_basis(); // basis of v*M
  // psi = B^{-1} = v * H^{-1} = v * adj(H) / det(H); integral because Z^d <= M.
  BigInt det_h = determinant(h);
  BigMatrix adj_h = adjugate(h);
  BigMatrix psi(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      BigInt num = adj_h(i, j) * m.denominator();
      if (num % det_h != 0)
        throw VerificationFailure("psi(e_i) is not integral; lattice does not contain Z^d");
      psi(i, j) = num / det_h;
    }
  psi = row_hnf(psi);

  std::vector<IntVector> verts{IntVector(d, 0)};
  for (std::size_t j = 0; j < d; ++j) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = to_int64(psi(i, j));
    verts.push_back(std::move(v));
  }
  TransformRecord t{inverse(psi), RationalMatrix::from(psi), IntVector(d, 0)};
  return {Simplex(std::move(verts)), std::move(t)};
}

inline std::pair<Simplex, TransformRecord> simplex_from_lattice(const CyclicLattice &m) {
  return simplex_from_lattice(GeneralLattice::from_cyclic(m));
}

/// Recovers a cyclic generator from a d-lattice whose quotient M/Z^d is
/// cyclic; nullopt when it is not. The returned generator is canonical
/// (first nonzero entry 1) when the index is prime.
inline std::optional<CyclicLattice> to_cyclic(const GeneralLattice &m,
                                              std::uint64_t budget = default_enumeration_budget) {
  if (m.index() == 1) return std::nullopt;
  const std::int64_t idx = to_int64(m.index());
  std::optional<CyclicLattice> found;
  for_each_coset_rep(
      m,
      [&](const RationalPoint &r) {
        // order of r in M/Z^d is the lcm of its reduced denominators
        std::int64_t order = 1;
        for (auto n : r.numerators) {
          std::int64_t den = r.denominator / std::gcd(n, r.denominator);
          order = std::lcm(order, den);
        }
        if (order != idx) return true;
        IntVector y(r.numerators.size());
        for (std::size_t i = 0; i < y.size(); ++i)
          y[i] = static_cast<std::int64_t>(static_cast<__int128>(r.numerators[i]) * idx /
                                           r.denominator);
        CyclicLattice c(idx, std::move(y));
        found = c.canonical().value_or(c);
        return false;
      },
      budget);
  return found;
}

} // namespace latwidth
