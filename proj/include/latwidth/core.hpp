#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace latwidth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer point or covector of Z^d. Entries are machine-width; anything that
/// can outgrow them (indices, bounds) is carried as BigInt instead.
using IntVector = std::vector<std::int64_t>;

/// Raised when an enumeration would exceed its configured budget. Callers get
/// a refusal, never a truncated answer.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a recomputed certificate disagrees with a stored one.
class VerificationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const char *what) {
  if (!cond) throw std::invalid_argument(what);
}

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

inline std::int64_t to_int64(const BigInt &x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer does not fit in 64 bits: " + x.str());
  return static_cast<std::int64_t>(x);
}

/// Non-negative remainder.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mod_floor(__int128 a, std::int64_t m) {
  auto r = static_cast<std::int64_t>(a % m);
  return r < 0 ? r + m : r;
}

/// ||x|| = max(0, max_i x_i) - min(0, min_i x_i); the support function of
/// sigma_d - sigma_d, so w_xi(sigma_d) = width_norm(xi).
inline std::int64_t width_norm(std::span<const std::int64_t> x) {
  std::int64_t hi = 0, lo = 0;
  for (auto v : x) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return hi - lo;
}

inline std::int64_t sup_norm(std::span<const std::int64_t> x) {
  std::int64_t m = 0;
  for (auto v : x) m = std::max(m, v < 0 ? -v : v);
  return m;
}

inline bool is_zero(std::span<const std::int64_t> x) {
  return std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
}

/// num / den in lowest terms. Boost 1.74 rejects negative denominators, so the
/// sign is moved to the numerator first.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline BigInt pow_big(const BigInt &base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

/// n(k,d) = (k+1)^(d+1) - k^(d+1), the number of x in Z^d with ||x|| <= k.
inline BigInt norm_ball_size(std::int64_t k, int d) {
  return pow_big(BigInt(k + 1), static_cast<unsigned>(d + 1)) -
         pow_big(BigInt(k), static_cast<unsigned>(d + 1));
}

/// Number of x in Z^d with ||x|| == k.
inline BigInt norm_sphere_size(std::int64_t k, int d) {
  if (k == 0) return 1;
  return norm_ball_size(k, d) - norm_ball_size(k - 1, d);
}

namespace detail {

// Entries x[pos..] range over [lo, hi]; need_lo / need_hi request that at
// least one entry of the whole vector equals lo / hi. Returns false when the
// visitor asked to stop.
template <class Visitor>
bool fill_range(IntVector &x, std::size_t pos, std::int64_t lo,
                std::int64_t hi, bool need_lo, bool need_hi, Visitor &visit) {
  if (pos == x.size()) {
    if (need_lo || need_hi) return true;
    return visit(std::as_const(x));
  }
  std::size_t left = x.size() - pos;
  if (static_cast<std::size_t>(need_lo) + static_cast<std::size_t>(need_hi) >
          left &&
      lo != hi)
    return true;
  for (std::int64_t v = lo; v <= hi; ++v) {
    x[pos] = v;
    if (!fill_range(x, pos + 1, lo, hi, need_lo && v != lo, need_hi && v != hi,
                    visit))
      return false;
  }
  return true;
}

} // namespace detail

/// Visits every x in Z^d with ||x|| == k, grouped by m = min(0, min_i x_i)
/// running from -k up to 0. Only the groups with m in [m_first, m_last] are
/// visited; the visitor returns false to stop early.
template <class Visitor>
bool for_each_in_norm_sphere(std::int64_t k, int d, std::int64_t m_first,
                             std::int64_t m_last, Visitor &&visit) {
  require(d >= 1, "dimension must be >= 1");
  require(k >= 0, "norm radius must be >= 0");
  IntVector x(static_cast<std::size_t>(d), 0);
  if (k == 0) return m_first <= 0 && 0 <= m_last ? visit(std::as_const(x)) : true;
  for (std::int64_t m = std::max(m_first, -k); m <= std::min<std::int64_t>(m_last, 0);
       ++m) {
    // min(0, min x) == m and max(0, max x) == m + k. A bound of 0 is
    // attained by the implicit 0 and needs no entry to hit it.
    if (!detail::fill_range(x, 0, m, m + k, m < 0, m + k > 0, visit))
      return false;
  }
  return true;
}

/// Visits every x in Z^d with ||x|| <= k exactly once, zero included. Within
/// each radius the order follows the min-coordinate decomposition
/// m = -k..0 used to count n(k,d).
template <class Visitor>
bool for_each_in_norm_ball(std::int64_t k, int d, Visitor &&visit) {
  require(d >= 1, "dimension must be >= 1");
  require(k >= 0, "norm radius must be >= 0");
  IntVector x(static_cast<std::size_t>(d), 0);
  for (std::int64_t m = -k; m <= 0; ++m) {
    // entries in [m, m + k]; the minimum m must be attained unless m == 0
    if (!detail::fill_range(x, 0, m, m + k, m < 0, false, visit)) return false;
  }
  return true;
}

/// Materializes the norm ball. Refuses when n(k,d) exceeds `max_count` or the
/// machine range.
inline std::vector<IntVector>
norm_ball(std::int64_t k, int d,
          std::uint64_t max_count = std::numeric_limits<std::int64_t>::max()) {
  require(d >= 1, "dimension must be >= 1");
  require(k >= 0, "norm radius must be >= 0");
  BigInt count = norm_ball_size(k, d);
  if (count > BigInt(max_count))
    throw BudgetExceeded("norm ball of radius " + std::to_string(k) +
                         " in dimension " + std::to_string(d) + " has " +
                         count.str() + " points, over budget");
  std::vector<IntVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_in_norm_ball(k, d, [&](const IntVector &x) {
    out.push_back(x);
    return true;
  });
  return out;
}

/// Unit vector e_i (0-based).
inline IntVector unit_vector(int d, int i) {
  IntVector e(static_cast<std::size_t>(d), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

/// Flips the sign so that the first nonzero entry is positive.
inline IntVector sign_normalized(IntVector x) {
  for (auto v : x) {
    if (v == 0) continue;
    if (v < 0)
      for (auto &e : x) e = -e;
    break;
  }
  return x;
}

/// Tie-break order for minimizers: colexicographic, i.e. compared from the
/// last coordinate. On sign-normalized vectors of Z^d this ranks e_1 first.
inline bool colex_less(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(),
                                      b.rend());
}

inline std::string to_string(std::span<const std::int64_t> x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

} // namespace latwidth
