#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "core.hpp"
#include "freecheck.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "widthengine.hpp"

namespace latwidth {

/// Default cap on p^(d-1) for line enumeration.
inline constexpr std::uint64_t default_line_budget = 1'000'000'000;

/// Number of lines of (Z/pZ)^d: (p^d - 1) / (p - 1).
inline BigInt line_count(int d, std::int64_t p) {
  return (pow_big(BigInt(p), static_cast<unsigned>(d)) - 1) / (p - 1);
}

/// Enumerates the lines of (Z/pZ)^d by canonical generator (first nonzero
/// coordinate 1). Lines are indexed 0..line_count-1: first by the position of
/// the leading 1, then by the trailing coordinates read in base p with the
/// last coordinate varying fastest.
class LineSpace {
public:
  LineSpace(int d, std::int64_t p, std::uint64_t budget = default_line_budget) : d_(d), p_(p) {
    require(d >= 1, "dimension must be >= 1");
    if (!is_prime(p)) throw std::invalid_argument("line enumeration needs a prime p, got " + std::to_string(p));
    BigInt work = pow_big(BigInt(p), static_cast<unsigned>(d - 1));
    if (work > BigInt(budget))
      throw BudgetExceeded("p^(d-1) = " + work.str() + " lines exceed the enumeration budget");
    count_ = static_cast<std::uint64_t>(line_count(d, p));
    std::uint64_t block = static_cast<std::uint64_t>(work);
    for (int j = 0; j < d; ++j) {
      block_.push_back(block);
      block /= static_cast<std::uint64_t>(p);
    }
  }

  int dim() const { return d_; }
  std::int64_t prime() const { return p_; }
  std::uint64_t size() const { return count_; }

  IntVector generator(std::uint64_t index) const {
    require(index < count_, "line index out of range");
    IntVector y(static_cast<std::size_t>(d_), 0);
    std::size_t lead = 0;
    while (index >= block_[lead]) index -= block_[lead++];
    y[lead] = 1;
    for (std::size_t i = static_cast<std::size_t>(d_); i-- > lead + 1;) {
      y[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p_));
      index /= static_cast<std::uint64_t>(p_);
    }
    return y;
  }

  CyclicLattice lattice(std::uint64_t index) const { return CyclicLattice(p_, generator(index)); }

private:
  int d_;
  std::int64_t p_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> block_; // lines whose leading 1 sits at position j
};

inline std::vector<CyclicLattice> enumerate_lines(int d, std::int64_t p,
                                                  std::uint64_t budget = default_line_budget) {
  LineSpace lines(d, p, budget);
  std::vector<CyclicLattice> out;
  out.reserve(lines.size());
  for (std::uint64_t i = 0; i < lines.size(); ++i) out.push_back(lines.lattice(i));
  return out;
}

// ---------------------------------------------------------------------------
// Bounds

/// (p+1)(p+2)...(p+d)/d! - (d+1): the number of non-vertex lattice points of
/// p * sigma_d, which bounds the lines whose M(y) is not lattice-free.
inline BigInt free_bound(int d, std::int64_t p) {
  BigInt num = 1, den = 1;
  for (int i = 1; i <= d; ++i) {
    num *= BigInt(p) + i;
    den *= i;
  }
  return num / den - (d + 1);
}

/// floor(2 [(k+1)^(d+1) - k^(d+1)] p^(d-2)), the bracketed form of the count
/// of lines with width <= k. For d = 1 the power is negative and the floor
/// is taken; a floor of an upper bound on an integer is still a bound.
inline BigInt width_bound(int d, std::int64_t p, std::int64_t k) {
  BigInt n = 2 * norm_ball_size(k, d);
  if (d >= 2) return n * pow_big(BigInt(p), static_cast<unsigned>(d - 2));
  return n / p;
}

/// The mean-value relaxation 2 (d+1) (k+1)^d p^(d-2), as used in the
/// existence condition. Requires d >= 2.
inline BigInt width_bound_relaxed(int d, const BigInt &p, std::int64_t k) {
  require(d >= 2, "relaxed width bound needs d >= 2");
  return 2 * BigInt(d + 1) * pow_big(BigInt(k + 1), static_cast<unsigned>(d)) *
         pow_big(p, static_cast<unsigned>(d - 2));
}

// ---------------------------------------------------------------------------
// Census

struct CensusCounts {
  std::uint64_t lines = 0;
  std::uint64_t not_free = 0;       // f
  std::uint64_t narrow = 0;         // g: width <= k
  std::uint64_t free_and_wide = 0;  // free and width > k

  CensusCounts &operator+=(const CensusCounts &o) {
    lines += o.lines;
    not_free += o.not_free;
    narrow += o.narrow;
    free_and_wide += o.free_and_wide;
    return *this;
  }
  friend bool operator==(const CensusCounts &, const CensusCounts &) = default;
};

struct CensusReport {
  int d = 0;
  std::int64_t p = 0;
  std::int64_t k = 0;
  BigInt lines_total;
  std::uint64_t f_exact = 0;
  std::uint64_t g_exact = 0;
  std::uint64_t free_and_wide_exact = 0;
  BigInt f_bound;
  BigInt g_bound;

  bool f_bound_holds() const { return BigInt(f_exact) <= f_bound; }
  /// Only asserted for k < p; beyond that the bound is not claimed.
  bool g_bound_holds() const { return k >= p || BigInt(g_exact) <= g_bound; }
  bool inclusion_exclusion_holds() const {
    return BigInt(free_and_wide_exact) >= lines_total - f_exact - g_exact;
  }
};

struct CensusOptions {
  unsigned threads = 1;
  std::uint64_t line_budget = default_line_budget;
  /// When set, progress is written here after each chunk and picked up again
  /// by a later run with the same (d, p, k).
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t chunk_lines = 1u << 20;
};

namespace detail {

inline CensusCounts census_range(const LineSpace &lines, std::int64_t k, std::uint64_t begin,
                                 std::uint64_t end) {
  CensusCounts c;
  for (std::uint64_t i = begin; i < end; ++i) {
    CyclicLattice m = lines.lattice(i);
    bool free = is_free_cyclic(m).is_free();
    bool narrow = width_at_most(m, k);
    ++c.lines;
    if (!free) ++c.not_free;
    if (narrow) ++c.narrow;
    if (free && !narrow) ++c.free_and_wide;
  }
  return c;
}

struct CensusCheckpoint {
  int d;
  std::int64_t p, k;
  std::uint64_t next;
  CensusCounts counts;
};

inline std::optional<CensusCheckpoint> load_checkpoint(const std::filesystem::path &path, int d,
                                                       std::int64_t p, std::int64_t k) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw std::runtime_error("corrupt census checkpoint: " + path.string());
  if (j.at("d").get<int>() != d || j.at("p").get<std::int64_t>() != p ||
      j.at("k").get<std::int64_t>() != k)
    return std::nullopt;
  CensusCheckpoint cp{d, p, k, j.at("next").get<std::uint64_t>(), {}};
  cp.counts.lines = j.at("lines").get<std::uint64_t>();
  cp.counts.not_free = j.at("not_free").get<std::uint64_t>();
  cp.counts.narrow = j.at("narrow").get<std::uint64_t>();
  cp.counts.free_and_wide = j.at("free_and_wide").get<std::uint64_t>();
  return cp;
}

inline void save_checkpoint(const std::filesystem::path &path, const CensusCheckpoint &cp) {
  nlohmann::json j{{"d", cp.d},
                   {"p", cp.p},
                   {"k", cp.k},
                   {"next", cp.next},
                   {"lines", cp.counts.lines},
                   {"not_free", cp.counts.not_free},
                   {"narrow", cp.counts.narrow},
                   {"free_and_wide", cp.counts.free_and_wide}};
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("cannot write census checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace detail

/// Exhaustive census of all lines: lattice-freeness, width <= k, and the
/// two counting bounds. Counters are merged per chunk so the result does not
/// depend on the thread count.
inline CensusReport existence_census(int d, std::int64_t p, std::int64_t k,
                                     const CensusOptions &opts = {}) {
  require(k >= 0, "census width threshold must be >= 0");
  LineSpace lines(d, p, opts.line_budget);
  const std::uint64_t total = lines.size();

  std::uint64_t next = 0;
  CensusCounts counts;
  if (opts.checkpoint)
    if (auto cp = detail::load_checkpoint(*opts.checkpoint, d, p, k)) {
      next = cp->next;
      counts = cp->counts;
    }

  const std::uint64_t chunk = std::max<std::uint64_t>(opts.chunk_lines, 1);
  while (next < total) {
    const std::uint64_t end = std::min(total, next + chunk);
    std::vector<CensusCounts> partial(std::max(1u, opts.threads));
    parallel_slices(end - next, opts.threads, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
      partial[w] = detail::census_range(lines, k, next + b, next + e);
    });
    for (const auto &c : partial) counts += c;
    next = end;
    if (opts.checkpoint) detail::save_checkpoint(*opts.checkpoint, {d, p, k, next, counts});
  }

  CensusReport r;
  r.d = d;
  r.p = p;
  r.k = k;
  r.lines_total = line_count(d, p);
  r.f_exact = counts.not_free;
  r.g_exact = counts.narrow;
  r.free_and_wide_exact = counts.free_and_wide;
  r.f_bound = free_bound(d, p);
  r.g_bound = width_bound(d, p, k);
  if (BigInt(counts.lines) != r.lines_total)
    throw VerificationFailure("census visited " + std::to_string(counts.lines) + " lines, expected " +
                              r.lines_total.str());
  if (!r.inclusion_exclusion_holds())
    throw VerificationFailure("free-and-wide count is below lines - f - g");
  return r;
}

struct CountAndBound {
  std::uint64_t count = 0;
  BigInt bound;
};

/// Lines whose M(y) meets sigma_d outside its vertices, with the bound.
inline CountAndBound exact_f(int d, std::int64_t p, const CensusOptions &opts = {}) {
  LineSpace lines(d, p, opts.line_budget);
  std::atomic<std::uint64_t> count{0};
  parallel_slices(lines.size(), opts.threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    std::uint64_t local = 0;
    for (std::uint64_t i = b; i < e; ++i)
      if (!is_free_cyclic(lines.lattice(i)).is_free()) ++local;
    count += local;
  });
  CountAndBound r{count.load(), free_bound(d, p)};
  if (BigInt(r.count) > r.bound)
    throw VerificationFailure("lattice-freeness count exceeds its bound");
  return r;
}

/// Lines whose M(y) has width <= k, with the bracketed bound.
inline CountAndBound exact_g(int d, std::int64_t p, std::int64_t k, const CensusOptions &opts = {}) {
  require(k >= 1, "width threshold must be >= 1");
  LineSpace lines(d, p, opts.line_budget);
  std::atomic<std::uint64_t> count{0};
  parallel_slices(lines.size(), opts.threads, [&](unsigned, std::uint64_t b, std::uint64_t e) {
    std::uint64_t local = 0;
    for (std::uint64_t i = b; i < e; ++i)
      if (width_at_most(lines.lattice(i), k)) ++local;
    count += local;
  });
  CountAndBound r{count.load(), width_bound(d, p, k)};
  if (k < p && BigInt(r.count) > r.bound)
    throw VerificationFailure("narrow-width count exceeds its bound");
  return r;
}

inline nlohmann::json to_json(const CensusReport &r) {
  return {{"d", std::to_string(r.d)},
          {"p", std::to_string(r.p)},
          {"k", std::to_string(r.k)},
          {"lines_total", r.lines_total.str()},
          {"f_exact", std::to_string(r.f_exact)},
          {"g_exact", std::to_string(r.g_exact)},
          {"free_and_wide_exact", std::to_string(r.free_and_wide_exact)},
          {"f_bound", r.f_bound.str()},
          {"g_bound", r.g_bound.str()}};
}

inline CensusReport census_report_from_json(const nlohmann::json &j) {
  CensusReport r;
  r.d = std::stoi(j.at("d").get<std::string>());
  r.p = std::stoll(j.at("p").get<std::string>());
  r.k = std::stoll(j.at("k").get<std::string>());
  r.lines_total = BigInt(j.at("lines_total").get<std::string>());
  r.f_exact = std::stoull(j.at("f_exact").get<std::string>());
  r.g_exact = std::stoull(j.at("g_exact").get<std::string>());
  r.free_and_wide_exact = std::stoull(j.at("free_and_wide_exact").get<std::string>());
  r.f_bound = BigInt(j.at("f_bound").get<std::string>());
  r.g_bound = BigInt(j.at("g_bound").get<std::string>());
  return r;
}

} // namespace latwidth
