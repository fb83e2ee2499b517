#pragma once

#include <numeric>
#include <tuple>
#include <optional>
#include <vector>

#include "core.hpp"
#include "matrix.hpp"

namespace latwidth {

/// Full-dimensional integral simplex in R^d given by its d+1 vertices.
class Simplex {
public:
  explicit Simplex(std::vector<IntVector> vertices) : vertices_(std::move(vertices)) {
    require(vertices_.size() >= 2, "a simplex needs d+1 >= 2 vertices");
    const std::size_t d = vertices_.size() - 1;
    for (const auto &v : vertices_) require_same_dim(v.size(), d);
    require(determinant(edge_matrix()) != 0, "degenerate simplex: vertices are affinely dependent");
  }

  /// Canonical simplex sigma_d with vertices 0, e_1, ..., e_d.
  static Simplex standard(int d) { return dilated_standard(d, 1); }

  /// t * sigma_d.
  static Simplex dilated_standard(int d, std::int64_t t) {
    std::vector<IntVector> v{IntVector(static_cast<std::size_t>(d), 0)};
    for (int i = 0; i < d; ++i) {
      auto e = unit_vector(d, i);
      e[static_cast<std::size_t>(i)] = t;
      v.push_back(std::move(e));
    }
    return Simplex(std::move(v));
  }

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<IntVector> &vertices() const { return vertices_; }

  /// A = [v_1 - v_0, ..., v_d - v_0] as columns.
  BigMatrix edge_matrix() const {
    const std::size_t d = vertices_.size() - 1;
    BigMatrix a(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i)
        a(i, j) = BigInt(vertices_[j + 1][i]) - vertices_[0][i];
    return a;
  }

  /// d! * vol, i.e. |det A|.
  BigInt normalized_volume() const { return abs(determinant(edge_matrix())); }

  friend bool operator==(const Simplex &, const Simplex &) = default;

private:
  std::vector<IntVector> vertices_;
};

/// M(y) = Z^d + Z * y / m, with y reduced into [0, m)^d and of additive order
/// exactly m in (Z/mZ)^d. The modulus is machine-width: every algorithm on
/// this type loops over the m cosets anyway.
class CyclicLattice {
public:
  CyclicLattice(std::int64_t modulus, IntVector generator)
      : modulus_(modulus), generator_(std::move(generator)) {
    require(modulus_ >= 2, "cyclic lattice modulus must be >= 2");
    require(!generator_.empty(), "cyclic lattice dimension must be >= 1");
    std::int64_t g = modulus_;
    for (auto &v : generator_) {
      v = mod_floor(v, modulus_);
      g = std::gcd(g, v);
    }
    require(g == 1, "generator must have additive order exactly m "
                    "(gcd of entries and modulus must be 1)");
  }

  int dim() const { return static_cast<int>(generator_.size()); }
  std::int64_t modulus() const { return modulus_; }
  const IntVector &generator() const { return generator_; }

  /// The generator of the same cyclic subgroup whose first nonzero entry is 1,
  /// when it exists (always for prime modulus).
  std::optional<CyclicLattice> canonical() const {
    for (auto v : generator_) {
      if (v == 0) continue;
      std::int64_t inv = inverse_mod(v, modulus_);
      if (inv == 0) return std::nullopt;
      IntVector y(generator_.size());
      for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = static_cast<std::int64_t>(static_cast<__int128>(generator_[i]) * inv % modulus_);
      return CyclicLattice(modulus_, std::move(y));
    }
    return std::nullopt;
  }

  friend bool operator==(const CyclicLattice &, const CyclicLattice &) = default;

  /// Inverse of a modulo m, or 0 when gcd(a, m) != 1.
  static std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::tie(old_r, r) = std::pair{r, old_r - q * r};
      std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    if (old_r != 1) return 0;
    return mod_floor(old_s, m);
  }

private:
  std::int64_t modulus_;
  IntVector generator_;
};

/// A d-lattice M = (1/v) * Lambda * Z^d with Z^d <= M <= (1/v) Z^d.
class GeneralLattice {
public:
  GeneralLattice(std::int64_t denominator, IntMatrix basis)
      : denominator_(denominator), basis_(std::move(basis)) {
    require(denominator_ >= 1, "lattice denominator must be >= 1");
    require(basis_.rows() >= 1 && basis_.rows() == basis_.cols(),
            "lattice basis must be a nonempty square matrix");
    BigMatrix lam = to_big(basis_);
    det_ = determinant(lam);
    require(det_ != 0, "lattice basis is singular");
    // Z^d <= M  <=>  v * Lambda^{-1} integral  <=>  v * adj(Lambda) == 0 mod det
    BigMatrix adj = adjugate(lam);
    for (std::size_t i = 0; i < adj.rows(); ++i)
      for (std::size_t j = 0; j < adj.cols(); ++j)
        require((adj(i, j) * denominator_) % det_ == 0,
                "lattice does not contain Z^d");
    BigInt vd = pow_big(BigInt(denominator_), static_cast<unsigned>(dim()));
    require(vd % det_ == 0, "index is not an integer");
    index_ = abs(vd / det_);
  }

  static GeneralLattice integer_lattice(int d) {
    IntMatrix id(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < id.rows(); ++i) id(i, i) = 1;
    return GeneralLattice(1, std::move(id));
  }

  /// The d-lattice generated by Z^d and the rational points
  /// numerators[j] / denominator.
  static GeneralLattice generated_by(std::int64_t denominator,
                                     const std::vector<IntVector> &numerators, int d) {
    BigMatrix gens(static_cast<std::size_t>(d), static_cast<std::size_t>(d) + numerators.size());
    for (std::size_t i = 0; i < gens.rows(); ++i) gens(i, i) = denominator;
    for (std::size_t j = 0; j < numerators.size(); ++j) {
      require_same_dim(numerators[j].size(), static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < gens.rows(); ++i) gens(i, gens.rows() + j) = numerators[j][i];
    }
    return GeneralLattice(denominator, to_int(column_hnf(std::move(gens))));
  }

  static GeneralLattice from_cyclic(const CyclicLattice &c) {
    return generated_by(c.modulus(), {c.generator()}, c.dim());
  }

  int dim() const { return static_cast<int>(basis_.rows()); }
  std::int64_t denominator() const { return denominator_; }
  const IntMatrix &basis() const { return basis_; }
  const BigInt &basis_determinant() const { return det_; }
  /// [M : Z^d] = v^d / |det Lambda|.
  const BigInt &index() const { return index_; }

  /// Lower-triangular Hermite basis of v * M.
  BigMatrix hermite_basis() const {
    BigMatrix gens(basis_.rows(), 2 * basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      gens(i, i) = denominator_;
      for (std::size_t j = 0; j < basis_.cols(); ++j) gens(i, basis_.rows() + j) = basis_(i, j);
    }
    return column_hnf(std::move(gens));
  }

private:
  std::int64_t denominator_;
  IntMatrix basis_;
  BigInt det_;
  BigInt index_;
};

inline BigInt index(const GeneralLattice &m) { return m.index(); }
inline BigInt index(const CyclicLattice &m) { return m.modulus(); }

/// Rational point numerators / denominator.
struct RationalPoint {
  IntVector numerators;
  std::int64_t denominator = 1;

  friend bool operator==(const RationalPoint &, const RationalPoint &) = default;
};

} // namespace latwidth
