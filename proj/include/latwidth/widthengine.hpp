#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "core.hpp"
#include "duality.hpp"
#include "lattice.hpp"
#include "matrix.hpp"
#include "parallel.hpp"

namespace latwidth {

struct WidthCertificate {
  /// w(M) = min ||xi|| over nonzero xi in M*.
  std::int64_t width = 0;
  /// Minimizer on the lattice side, sign-normalized and colex-smallest.
  IntVector minimizer;
  /// When certifying a simplex: the covector u with A^T u = minimizer, so
  /// w_u(simplex) == width.
  std::optional<IntVector> simplex_covector;
};

struct WidthOptions {
  /// Total candidates the scan may visit (the ball up to the current radius).
  std::uint64_t level_budget = 200'000'000;
  unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Dual membership

inline bool dual_member(const CyclicLattice &m, std::span<const std::int64_t> xi) {
  require_same_dim(xi.size(), static_cast<std::size_t>(m.dim()));
  __int128 s = 0;
  const auto &y = m.generator();
  for (std::size_t i = 0; i < xi.size(); ++i) s += static_cast<__int128>(xi[i]) * y[i];
  return s % m.modulus() == 0;
}

/// M = (1/v) Lambda Z^d, so xi in M* iff Lambda^T xi == 0 (mod v).
inline bool dual_member(const GeneralLattice &m, std::span<const std::int64_t> xi) {
  require_same_dim(xi.size(), static_cast<std::size_t>(m.dim()));
  const auto &lam = m.basis();
  const std::int64_t v = m.denominator();
  for (std::size_t j = 0; j < lam.cols(); ++j) {
    __int128 s = 0;
    for (std::size_t i = 0; i < lam.rows(); ++i) s += static_cast<__int128>(lam(i, j)) * xi[i];
    if (s % v != 0) return false;
  }
  return true;
}

namespace detail {

// An exponent of M/Z^d: t * xi is in M* for every xi in Z^d.
inline std::int64_t quotient_exponent_bound(const CyclicLattice &m) { return m.modulus(); }
inline std::int64_t quotient_exponent_bound(const GeneralLattice &m) {
  return to_int64(m.index());
}

} // namespace detail

/// Shortest nonzero vector of M* in the width norm, scanning spheres of
/// radius k = 1, 2, ... The scan stops by k = [M : Z^d] at the latest since
/// index * e_1 lies in M*.
template <class Lattice>
WidthCertificate width_of_lattice(const Lattice &m, const WidthOptions &opts = {}) {
  const int d = m.dim();
  const std::int64_t cap = detail::quotient_exponent_bound(m);
  for (std::int64_t k = 1;; ++k) {
    BigInt visited = norm_ball_size(k, d) - 1;
    if (visited > BigInt(opts.level_budget))
      throw BudgetExceeded("width scan to radius " + std::to_string(k) + " needs " +
                           visited.str() + " candidates, over budget");

    // Groups m = -k..0 of the sphere are split across workers; each keeps
    // its best hit and the reduction applies the same order, so the result
    // does not depend on the split.
    const std::uint64_t groups = static_cast<std::uint64_t>(k) + 1;
    std::vector<std::optional<IntVector>> best(std::max(1u, opts.threads));
    parallel_slices(groups, opts.threads, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
      if (b == e) return;
      auto &slot = best[w];
      for_each_in_norm_sphere(k, d, -k + static_cast<std::int64_t>(b),
                              -k + static_cast<std::int64_t>(e) - 1, [&](const IntVector &xi) {
                                if (!dual_member(m, xi)) return true;
                                IntVector n = sign_normalized(xi);
                                if (!slot || colex_less(n, *slot)) slot = std::move(n);
                                return true;
                              });
    });
    std::optional<IntVector> winner;
    for (auto &b : best)
      if (b && (!winner || colex_less(*b, *winner))) winner = std::move(b);
    if (winner) {
      assert(width_norm(*winner) == k);
      return {k, std::move(*winner), std::nullopt};
    }
    // every radius below k + 1 is now known to be empty, so w(M) > k
    if (k >= cap)
      throw std::logic_error("width scan passed the quotient exponent without a dual vector");
  }
}

/// True iff some nonzero xi in M* has ||xi|| <= k, i.e. w(M) <= k. Stops at
/// the first hit.
template <class Lattice> bool width_at_most(const Lattice &m, std::int64_t k) {
  if (k < 1) return false;
  bool hit = false;
  for_each_in_norm_ball(k, m.dim(), [&](const IntVector &xi) {
    if (is_zero(xi) || !dual_member(m, xi)) return true;
    hit = true;
    return false;
  });
  return hit;
}

/// w_u(P) = max_v <u, v> - min_v <u, v> over the vertices of P.
inline std::int64_t directional_width(const std::vector<IntVector> &vertices,
                                      std::span<const std::int64_t> u) {
  __int128 hi = 0, lo = 0;
  bool first = true;
  for (const auto &v : vertices) {
    require_same_dim(v.size(), u.size());
    __int128 s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<__int128>(u[i]) * v[i];
    if (first || s > hi) hi = s;
    if (first || s < lo) lo = s;
    first = false;
  }
  return static_cast<std::int64_t>(hi - lo);
}

/// w(s) = w(M) for M = lattice_from_simplex(s). The dual minimizer xi is
/// carried back to u = A^{-T} xi, and w_u(s) is checked against the width.
inline WidthCertificate width_of_simplex(const Simplex &s, const WidthOptions &opts = {}) {
  auto [lattice, transform] = lattice_from_simplex(s);
  WidthCertificate cert = width_of_lattice(lattice, opts);

  BigMatrix a = s.edge_matrix();
  BigInt det = determinant(a);
  auto num = multiply(adjugate(a).transposed(), cert.minimizer);
  IntVector u(num.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (num[i] % det != 0)
      throw VerificationFailure("dual minimizer does not pull back to an integral covector");
    u[i] = to_int64(num[i] / det);
  }
  if (directional_width(s.vertices(), u) != cert.width)
    throw VerificationFailure("w_u(simplex) disagrees with the certified lattice width");
  cert.simplex_covector = std::move(u);
  return cert;
}

struct BruteForceWidth {
  std::int64_t width = 0;
  IntVector covector;
};

/// Minimum of w_u(s) over nonzero u in [-bound, bound]^d. Only complete
/// when some minimizer lies inside the box.
inline BruteForceWidth width_brute_force(const Simplex &s, std::int64_t bound) {
  require(bound >= 1, "brute-force box bound must be >= 1");
  const std::size_t d = static_cast<std::size_t>(s.dim());
  IntVector u(d, -bound);
  std::optional<BruteForceWidth> best;
  while (true) {
    if (!is_zero(u)) {
      std::int64_t w = directional_width(s.vertices(), u);
      IntVector n = sign_normalized(u);
      if (!best || w < best->width || (w == best->width && colex_less(n, best->covector)))
        best = BruteForceWidth{w, std::move(n)};
    }
    std::size_t i = 0;
    while (i < d && u[i] == bound) u[i++] = -bound;
    if (i == d) break;
    ++u[i];
  }
  return *best;
}

} // namespace latwidth
