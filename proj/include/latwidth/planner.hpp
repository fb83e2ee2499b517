#pragma once

#include <string>

#include "json.hpp"

#include "census.hpp"
#include "core.hpp"
#include "primes.hpp"

namespace latwidth {

/// Exact evaluation of the existence condition
///   2(d+1)(k+1)^d p^(d-2) + (p+d)^d / d!  <  p^(d-1)
/// and its two sufficient halves, each compared against p^(d-1)/2. All
/// fractions are cleared before comparing; nothing here is floating point.
struct BoundsReport {
  int d = 0;
  std::int64_t k = 0;
  BigInt p;
  Primality p_certainty = Primality::prime;
  BigInt lhs_term_g;         // 2(d+1)(k+1)^d p^(d-2)
  BigInt lhs_term_f_num;     // (p+d)^d
  BigInt lhs_term_f_den;     // d!
  BigInt rhs;                // p^(d-1)
  bool holds = false;        // full condition
  bool narrow_half = false;  // g-term < rhs / 2
  bool nonfree_half = false; // f-term < rhs / 2
  BigInt alpha_num{49}, alpha_den{100};
};

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Largest r with r^d <= n.
inline BigInt integer_dth_root(const BigInt &n, int d) {
  require(n >= 0, "integer_dth_root needs n >= 0");
  require(d >= 1, "integer_dth_root needs d >= 1");
  if (d == 1 || n < 2) return n;
  BigInt lo = 1, hi = 2;
  while (pow_big(hi, static_cast<unsigned>(d)) <= n) hi *= 2;
  // invariant: lo^d <= n < hi^d
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (pow_big(mid, static_cast<unsigned>(d)) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

/// The g-term half, rearranged: 4(d+1)(k+1)^d < p.
inline bool narrow_half_rearranged(int d, const BigInt &p, std::int64_t k) {
  return 4 * BigInt(d + 1) * pow_big(BigInt(k + 1), static_cast<unsigned>(d)) < p;
}

inline BoundsReport eval_condition_unchecked(int d, const BigInt &p, std::int64_t k) {
  BoundsReport r;
  r.d = d;
  r.k = k;
  r.p = p;
  r.lhs_term_g = width_bound_relaxed(d, p, k);
  r.lhs_term_f_num = pow_big(p + d, static_cast<unsigned>(d));
  r.lhs_term_f_den = factorial(d);
  r.rhs = pow_big(p, static_cast<unsigned>(d - 1));
  const BigInt &fact = r.lhs_term_f_den;
  r.holds = r.lhs_term_g * fact + r.lhs_term_f_num < r.rhs * fact;
  r.narrow_half = 2 * r.lhs_term_g < r.rhs;
  r.nonfree_half = 2 * r.lhs_term_f_num < r.rhs * fact;
  if (r.narrow_half != narrow_half_rearranged(d, p, k))
    throw std::logic_error("g-term half: direct and rearranged forms disagree");
  if (r.narrow_half && r.nonfree_half && !r.holds)
    throw std::logic_error("both halves hold but the full condition does not");
  return r;
}

inline BoundsReport eval_condition(int d, const BigInt &p, std::int64_t k) {
  require(d >= 3, "eval_condition needs d >= 3");
  require(k >= 1, "eval_condition needs k >= 1");
  Primality pr = primality(p);
  if (pr == Primality::composite) throw std::invalid_argument("p = " + p.str() + " is not prime");
  BoundsReport r = eval_condition_unchecked(d, p, k);
  r.p_certainty = pr;
  return r;
}

struct PlanResult {
  int d = 0;
  Rational beta;
  BigInt target;            // floor(alpha * d!)
  PrimeSearch prime;
  BigInt k_max;             // integer_dth_root(floor(p / (4(d+1))), d) - 1
  std::int64_t k = 0;       // largest k <= k_max where the condition holds, 0 if none
  std::int64_t beta_floor = 0;
  bool feasible = false;    // k >= 1
  bool meets_beta = false;  // feasible and k >= floor(beta * d)
  BoundsReport report;
};

/// Chooses p as the first prime >= floor(alpha * d!) and the largest k the
/// sufficient condition admits, then verifies the full condition exactly.
/// This only certifies existence through the counting argument; no lattice
/// is constructed.
inline PlanResult plan(int d, const Rational &beta, const Rational &alpha = Rational(49, 100)) {
  require(d >= 3, "plan needs d >= 3");
  require(beta > 0 && beta < 1, "plan needs 0 < beta < 1");
  require(alpha > 0 && alpha < Rational(1, 2), "plan needs 0 < alpha < 1/2");
  PlanResult out;
  out.d = d;
  out.beta = beta;
  BigInt fact = factorial(d);
  out.target = numerator(alpha) * fact / denominator(alpha);
  if (out.target < 2) out.target = 2;
  out.prime = nearest_prime(out.target);
  const BigInt &p = out.prime.prime;
  out.k_max = integer_dth_root(p / (4 * (d + 1)), d) - 1;
  BigInt bf = numerator(beta) * d / denominator(beta);
  out.beta_floor = to_int64(bf);

  std::int64_t k = out.k_max >= 1 ? to_int64(out.k_max) : 0;
  while (k >= 1 && !eval_condition_unchecked(d, p, k).holds) --k;
  out.k = k;
  out.feasible = k >= 1;
  out.report = eval_condition_unchecked(d, p, std::max<std::int64_t>(k, 1));
  out.report.p_certainty = out.prime.certainty;
  out.report.alpha_num = numerator(alpha);
  out.report.alpha_den = denominator(alpha);
  out.meets_beta = out.feasible && out.k >= out.beta_floor;
  return out;
}

inline const char *to_string(Primality p) {
  switch (p) {
  case Primality::prime: return "prime";
  case Primality::probable_prime: return "probable-prime";
  default: return "composite";
  }
}

inline nlohmann::json to_json(const BoundsReport &r) {
  return {{"d", std::to_string(r.d)},
          {"k", std::to_string(r.k)},
          {"p", r.p.str()},
          {"p_certainty", to_string(r.p_certainty)},
          {"lhs_term_g", r.lhs_term_g.str()},
          {"lhs_term_f_num", r.lhs_term_f_num.str()},
          {"lhs_term_f_den", r.lhs_term_f_den.str()},
          {"rhs", r.rhs.str()},
          {"holds", r.holds},
          {"narrow_half", r.narrow_half},
          {"nonfree_half", r.nonfree_half},
          {"alpha_num", r.alpha_num.str()},
          {"alpha_den", r.alpha_den.str()}};
}

inline BoundsReport bounds_report_from_json(const nlohmann::json &j) {
  BoundsReport r;
  r.d = std::stoi(j.at("d").get<std::string>());
  r.k = std::stoll(j.at("k").get<std::string>());
  r.p = BigInt(j.at("p").get<std::string>());
  auto c = j.at("p_certainty").get<std::string>();
  r.p_certainty = c == "prime" ? Primality::prime
                  : c == "probable-prime" ? Primality::probable_prime
                                          : Primality::composite;
  r.lhs_term_g = BigInt(j.at("lhs_term_g").get<std::string>());
  r.lhs_term_f_num = BigInt(j.at("lhs_term_f_num").get<std::string>());
  r.lhs_term_f_den = BigInt(j.at("lhs_term_f_den").get<std::string>());
  r.rhs = BigInt(j.at("rhs").get<std::string>());
  r.holds = j.at("holds").get<bool>();
  r.narrow_half = j.at("narrow_half").get<bool>();
  r.nonfree_half = j.at("nonfree_half").get<bool>();
  r.alpha_num = BigInt(j.at("alpha_num").get<std::string>());
  r.alpha_den = BigInt(j.at("alpha_den").get<std::string>());
  return r;
}

inline nlohmann::json to_json(const PlanResult &r) {
  Rational ratio(r.prime.prime, factorial(r.d));
  return {{"d", std::to_string(r.d)},
          {"beta", numerator(r.beta).str() + "/" + denominator(r.beta).str()},
          {"target", r.target.str()},
          {"p", r.prime.prime.str()},
          {"p_gap", r.prime.gap.str()},
          {"p_certainty", to_string(r.prime.certainty)},
          {"p_over_d_factorial", numerator(ratio).str() + "/" + denominator(ratio).str()},
          {"k_max", r.k_max.str()},
          {"k", std::to_string(r.k)},
          {"beta_floor", std::to_string(r.beta_floor)},
          {"feasible", r.feasible},
          {"meets_beta", r.meets_beta},
          {"note", "existence certified by counting only; no lattice is constructed"},
          {"report", to_json(r.report)}};
}

} // namespace latwidth
