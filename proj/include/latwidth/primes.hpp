#pragma once

#include <array>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "core.hpp"

namespace latwidth {

enum class Primality { composite, prime, probable_prime };

/// Strong probable-prime bases: the first thirteen primes. Together they
/// are deterministic for every n below `deterministic_prime_limit()`
/// (Sorenson and Webster, 2015); above it a pass only means "probable".
inline constexpr std::array<unsigned, 13> strong_prime_bases{2, 3, 5, 7, 11, 13, 17,
                                                             19, 23, 29, 31, 37, 41};

inline const BigInt &deterministic_prime_limit() {
  static const BigInt limit("3317044064679887385961981");
  return limit;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  std::uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool strong_probable_prime(const BigInt &n, const BigInt &a) {
  BigInt d = n - 1;
  unsigned s = 0;
  while (!bit_test(d, 0)) d >>= 1, ++s;
  BigInt x = boost::multiprecision::powm(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

} // namespace detail

/// Exact for every 64-bit input.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (unsigned p : strong_prime_bases) {
    if (static_cast<std::uint64_t>(n) == p) return true;
    if (n % p == 0) return false;
  }
  for (unsigned a : strong_prime_bases)
    if (!detail::strong_probable_prime(static_cast<std::uint64_t>(n), a)) return false;
  return true;
}

inline Primality primality(const BigInt &n) {
  if (n < 2) return Primality::composite;
  for (unsigned p : strong_prime_bases) {
    if (n == p) return Primality::prime;
    if (n % p == 0) return Primality::composite;
  }
  if (n <= std::numeric_limits<std::int64_t>::max())
    return is_prime(static_cast<std::int64_t>(n)) ? Primality::prime : Primality::composite;
  for (unsigned a : strong_prime_bases)
    if (!detail::strong_probable_prime(n, BigInt(a))) return Primality::composite;
  return n < deterministic_prime_limit() ? Primality::prime : Primality::probable_prime;
}

struct PrimeSearch {
  BigInt prime;
  /// prime - start
  BigInt gap;
  Primality certainty = Primality::prime;
};

/// Smallest (probable) prime >= n, searching upward.
inline PrimeSearch nearest_prime(const BigInt &n) {
  require(n >= 2, "nearest_prime needs n >= 2");
  BigInt c = n;
  if (c > 2 && !bit_test(c, 0)) ++c;
  while (true) {
    Primality p = primality(c);
    if (p != Primality::composite) return {c, c - n, p};
    c += (c == 2) ? 1 : 2;
  }
}

} // namespace latwidth
