#pragma once

#include <optional>
#include <vector>

#include "core.hpp"
#include "lattice.hpp"
#include "matrix.hpp"

namespace latwidth {

enum class Verdict { free, not_free };

inline const char *to_string(Verdict v) { return v == Verdict::free ? "free" : "not-free"; }

struct FreenessCertificate {
  Verdict verdict = Verdict::free;
  /// A point of M in sigma_d other than a vertex; present iff not free.
  std::optional<RationalPoint> witness;

  bool is_free() const { return verdict == Verdict::free; }
};

/// Default limit on enumerated cosets / box points.
inline constexpr std::uint64_t default_enumeration_budget = 50'000'000;

// ---------------------------------------------------------------------------
// Membership

inline bool contains(const CyclicLattice &m, const RationalPoint &x) {
  require_same_dim(x.numerators.size(), static_cast<std::size_t>(m.dim()));
  require(x.denominator >= 1, "rational point denominator must be >= 1");
  // m * x must be integral and congruent to j * y modulo m for some j
  IntVector scaled(x.numerators.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    __int128 t = static_cast<__int128>(x.numerators[i]) * m.modulus();
    if (t % x.denominator != 0) return false;
    scaled[i] = mod_floor(static_cast<__int128>(t / x.denominator), m.modulus());
  }
  const auto &y = m.generator();
  IntVector r(y.size(), 0);
  for (std::int64_t j = 0; j < m.modulus(); ++j) {
    if (r == scaled) return true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] += y[i];
      if (r[i] >= m.modulus()) r[i] -= m.modulus();
    }
  }
  return false;
}

inline bool contains(const GeneralLattice &m, const RationalPoint &x) {
  require_same_dim(x.numerators.size(), static_cast<std::size_t>(m.dim()));
  require(x.denominator >= 1, "rational point denominator must be >= 1");
  // x in M  <=>  Lambda^{-1} * v * x integral  <=>  adj * v * num == 0 mod det * den
  BigMatrix adj = adjugate(to_big(m.basis()));
  auto prod = multiply(adj, x.numerators);
  BigInt mod = m.basis_determinant() * x.denominator;
  for (auto &p : prod)
    if ((p * m.denominator()) % mod != 0) return false;
  return true;
}

/// Checks every property a not-free witness must have: coordinates in [0,1],
/// coordinate sum <= 1, not a vertex of sigma_d, and membership in M.
template <class Lattice>
bool witness_is_valid(const Lattice &m, const RationalPoint &w) {
  if (w.numerators.size() != static_cast<std::size_t>(m.dim()) || w.denominator < 1)
    return false;
  __int128 sum = 0;
  int nonzero = 0;
  bool all_zero_or_unit = true;
  for (auto n : w.numerators) {
    if (n < 0 || n > w.denominator) return false;
    sum += n;
    if (n != 0) ++nonzero;
    if (n != 0 && n != w.denominator) all_zero_or_unit = false;
  }
  if (sum > w.denominator) return false;
  if (all_zero_or_unit && nonzero <= 1) return false; // a vertex
  return contains(m, w);
}

// ---------------------------------------------------------------------------
// Cyclic criterion

/// M(y) meets sigma_d outside its vertices iff some multiple j*y, reduced into
/// [0, m)^d, has coordinate sum <= m. Points on the facet sum == 1 count as
/// violations. The witness is taken at the smallest such j.
inline FreenessCertificate is_free_cyclic(const CyclicLattice &lattice) {
  const std::int64_t m = lattice.modulus();
  const auto &y = lattice.generator();
  IntVector r(y.size(), 0);
  for (std::int64_t j = 1; j < m; ++j) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] += y[i];
      if (r[i] >= m) r[i] -= m;
      sum += r[i];
    }
    if (sum <= m) return {Verdict::not_free, RationalPoint{r, m}};
  }
  return {Verdict::free, std::nullopt};
}

/// Smallest j in [1, m) violating the residue criterion, if any. Full scan
/// over j without early exit; used to cross-check is_free_cyclic.
inline std::optional<std::int64_t> first_violation_naive(const CyclicLattice &lattice) {
  const std::int64_t m = lattice.modulus();
  std::optional<std::int64_t> first;
  for (std::int64_t j = 1; j < m; ++j) {
    std::int64_t sum = 0;
    for (auto yi : lattice.generator())
      sum += static_cast<std::int64_t>(static_cast<__int128>(j) * yi % m);
    if (sum <= m && !first) first = j;
  }
  return first;
}

// ---------------------------------------------------------------------------
// General d-lattices

/// Visits one representative of each coset of Z^d in M, reduced into [0,1)^d
/// and given as numerators over M's denominator. Uses the lower-triangular
/// Hermite basis b_i of v*M: the points sum_i c_i b_i with
/// 0 <= c_i < v / b_i[i] are pairwise incongruent mod v*Z^d and there are
/// exactly [M : Z^d] of them.
template <class Visitor>
bool for_each_coset_rep(const GeneralLattice &lattice, Visitor &&visit,
                        std::uint64_t budget = default_enumeration_budget) {
  if (lattice.index() > BigInt(budget))
    throw BudgetExceeded("lattice index " + lattice.index().str() +
                         " exceeds the coset enumeration budget");
  const std::size_t d = static_cast<std::size_t>(lattice.dim());
  const std::int64_t v = lattice.denominator();
  IntMatrix h = to_int(lattice.hermite_basis());
  std::vector<std::int64_t> range(d);
  for (std::size_t i = 0; i < d; ++i) range[i] = v / h(i, i);

  std::vector<std::int64_t> c(d, 0);
  IntVector point(d, 0);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j <= i; ++j) s += static_cast<__int128>(c[j]) * h(i, j);
      point[i] = mod_floor(s, v);
    }
    if (!visit(RationalPoint{point, v})) return false;
    std::size_t i = 0;
    while (i < d && ++c[i] == range[i]) c[i++] = 0;
    if (i == d) return true;
  }
}

inline std::vector<RationalPoint> coset_reps(const GeneralLattice &lattice,
                                             std::uint64_t budget = default_enumeration_budget) {
  std::vector<RationalPoint> out;
  for_each_coset_rep(
      lattice,
      [&](const RationalPoint &r) {
        out.push_back(r);
        return true;
      },
      budget);
  return out;
}

/// A point of M in sigma_d minus its vertices has all coordinates in [0,1),
/// so it is its own reduced coset representative: M is free iff no nonzero
/// representative has coordinate sum <= 1.
inline FreenessCertificate is_free_general(const GeneralLattice &lattice,
                                           std::uint64_t budget = default_enumeration_budget) {
  FreenessCertificate cert;
  for_each_coset_rep(
      lattice,
      [&](const RationalPoint &r) {
        __int128 sum = 0;
        for (auto n : r.numerators) sum += n;
        if (sum == 0 || sum > r.denominator) return true;
        cert = {Verdict::not_free, r};
        return false;
      },
      budget);
  return cert;
}

// ---------------------------------------------------------------------------
// Direct oracle

/// All integer points of the closed simplex, found by scanning its bounding
/// box with exact barycentric tests.
inline std::vector<IntVector>
integer_points_in_simplex(const Simplex &s, std::uint64_t budget = default_enumeration_budget) {
  const std::size_t d = static_cast<std::size_t>(s.dim());
  const auto &verts = s.vertices();
  IntVector lo = verts[0], hi = verts[0];
  BigInt box = 1;
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto &v : verts) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
    box *= BigInt(hi[i]) - lo[i] + 1;
  }
  if (box > BigInt(budget))
    throw BudgetExceeded("bounding box of " + box.str() + " points exceeds budget");

  BigMatrix a = s.edge_matrix();
  BigInt det = determinant(a);
  IntMatrix adj = to_int(adjugate(a));
  const __int128 sign = det > 0 ? 1 : -1;
  const __int128 absdet = static_cast<__int128>(to_int64(abs(det)));

  std::vector<IntVector> out;
  IntVector x = lo, w(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) w[i] = x[i] - verts[0][i];
    // det * lambda_i = (adj * w)_i
    bool inside = true;
    __int128 total = 0;
    for (std::size_t i = 0; i < d && inside; ++i) {
      __int128 t = 0;
      for (std::size_t j = 0; j < d; ++j) t += static_cast<__int128>(adj(i, j)) * w[j];
      t *= sign;
      if (t < 0) inside = false;
      total += t;
    }
    if (inside && total <= absdet) out.push_back(x);
    std::size_t i = 0;
    while (i < d && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == d) break;
    ++x[i];
  }
  return out;
}

inline bool is_lattice_free(const Simplex &s, std::uint64_t budget = default_enumeration_budget) {
  return integer_points_in_simplex(s, budget).size() == s.vertices().size();
}

} // namespace latwidth
