#pragma once

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "census.hpp"
#include "core.hpp"
#include "duality.hpp"
#include "freecheck.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "widthengine.hpp"

namespace latwidth {

inline constexpr const char *tool_version = "0.1.0";

struct SearchMeta {
  std::uint64_t seed = 0;
  std::string mode;      // "exhaustive" or "random"
  std::string timestamp; // set when appended to a catalog
  std::string version = tool_version;
};

/// A lattice-free cyclic lattice together with everything needed to re-check
/// it: its width certificate, its freeness verdict and the simplex it
/// corresponds to.
struct SearchRecord {
  CyclicLattice lattice;
  WidthCertificate width;
  FreenessCertificate freeness;
  Simplex simplex;
  SearchMeta meta;
};

struct SearchOptions {
  unsigned threads = 1;
  std::uint64_t line_budget = default_line_budget;
};

/// Builds the record for a lattice already known to be free.
inline SearchRecord make_record(const CyclicLattice &m, FreenessCertificate freeness,
                                WidthCertificate width, SearchMeta meta) {
  auto [simplex, transform] = simplex_from_lattice(m);
  return {m, std::move(width), std::move(freeness), std::move(simplex), std::move(meta)};
}

/// Recomputes every certificate in the record; returns the mismatches.
inline std::vector<std::string> verify_record(const SearchRecord &r) {
  std::vector<std::string> issues;
  auto freeness = is_free_cyclic(r.lattice);
  if (!freeness.is_free()) issues.push_back("lattice is not lattice-free");
  if (freeness.is_free() != r.freeness.is_free()) issues.push_back("stored freeness verdict differs");
  auto width = width_of_lattice(r.lattice);
  if (width.width != r.width.width)
    issues.push_back("stored width " + std::to_string(r.width.width) + " but recomputed " +
                     std::to_string(width.width));
  if (width.minimizer != r.width.minimizer) issues.push_back("stored minimizer differs");

  auto [back, transform] = lattice_from_simplex(r.simplex);
  if (back.index() != r.lattice.modulus()) issues.push_back("simplex volume does not match the index");
  if (!is_free_general(back).is_free()) issues.push_back("simplex lattice is not lattice-free");
  if (width_of_lattice(back).width != width.width)
    issues.push_back("simplex width differs from lattice width");
  return issues;
}

namespace detail {

inline bool record_order(const SearchRecord &a, const SearchRecord &b) {
  if (a.width.width != b.width.width) return a.width.width > b.width.width;
  return a.lattice.generator() < b.lattice.generator();
}

inline void finalize(std::vector<SearchRecord> &records) {
  std::sort(records.begin(), records.end(), record_order);
  for (const auto &r : records) {
    auto issues = verify_record(r);
    if (!issues.empty())
      throw VerificationFailure("search record failed self-verification: " + issues.front());
  }
}

} // namespace detail

/// Tests every line of (Z/pZ)^d, freeness first and width only for free
/// lines. Returns records with width >= k_min, widest first.
inline std::vector<SearchRecord> search_exhaustive(int d, std::int64_t p, std::int64_t k_min,
                                                   const SearchOptions &opts = {}) {
  LineSpace lines(d, p, opts.line_budget);
  std::vector<std::vector<SearchRecord>> found(std::max(1u, opts.threads));
  parallel_slices(lines.size(), opts.threads, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      CyclicLattice m = lines.lattice(i);
      auto freeness = is_free_cyclic(m);
      if (!freeness.is_free()) continue;
      auto width = width_of_lattice(m);
      if (width.width < k_min) continue;
      found[w].push_back(make_record(m, std::move(freeness), std::move(width), {0, "exhaustive"}));
    }
  });
  std::vector<SearchRecord> out;
  for (auto &f : found) std::move(f.begin(), f.end(), std::back_inserter(out));
  detail::finalize(out);
  return out;
}

/// Number of free lines found by a full scan; shares no code with census
/// counting beyond the line enumeration.
inline std::uint64_t count_free_lines(int d, std::int64_t p, const SearchOptions &opts = {}) {
  return search_exhaustive(d, p, 1, opts).size();
}

namespace detail {

// Uniform value in [0, n) by rejection; portable across standard libraries.
inline std::int64_t uniform_below(std::mt19937_64 &rng, std::int64_t n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % un;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return static_cast<std::int64_t>(x % un);
}

} // namespace detail

/// Samples `budget` lines uniformly (uniform nonzero vectors, canonicalized)
/// and returns the distinct free ones with width >= k_min. Deterministic in
/// the seed.
inline std::vector<SearchRecord> search_random(int d, std::int64_t p, std::uint64_t budget,
                                               std::uint64_t seed, std::int64_t k_min = 1) {
  require(budget >= 1, "random search budget must be >= 1");
  require(d >= 1, "dimension must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument("random search needs a prime p");
  std::mt19937_64 rng(seed);
  std::set<IntVector> seen;
  std::vector<SearchRecord> out;
  IntVector y(static_cast<std::size_t>(d));
  for (std::uint64_t s = 0; s < budget; ++s) {
    do
      for (auto &v : y) v = detail::uniform_below(rng, p);
    while (is_zero(y));
    CyclicLattice m = *CyclicLattice(p, y).canonical();
    if (!seen.insert(m.generator()).second) continue;
    auto freeness = is_free_cyclic(m);
    if (!freeness.is_free()) continue;
    auto width = width_of_lattice(m);
    if (width.width < k_min) continue;
    out.push_back(make_record(m, std::move(freeness), std::move(width), {seed, "random"}));
  }
  detail::finalize(out);
  return out;
}

// ---------------------------------------------------------------------------
// Catalog (JSONL, one record per line)

inline nlohmann::json to_json(const SearchRecord &r) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto &v : r.simplex.vertices()) verts.push_back(v);
  return {{"d", std::to_string(r.lattice.dim())},
          {"p", std::to_string(r.lattice.modulus())},
          {"y", r.lattice.generator()},
          {"width", std::to_string(r.width.width)},
          {"xi", r.width.minimizer},
          {"simplex", {{"vertices", verts}}},
          {"seed", std::to_string(r.meta.seed)},
          {"mode", r.meta.mode},
          {"timestamp", r.meta.timestamp},
          {"version", r.meta.version}};
}

namespace detail {

inline std::int64_t int_field(const nlohmann::json &j, const char *key) {
  const auto &v = j.at(key);
  if (v.is_string()) {
    std::size_t pos = 0;
    const auto &s = v.get_ref<const std::string &>();
    long long x = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(std::string("malformed integer field ") + key);
    return x;
  }
  return v.get<std::int64_t>();
}

} // namespace detail

inline SearchRecord search_record_from_json(const nlohmann::json &j) {
  const int d = static_cast<int>(detail::int_field(j, "d"));
  CyclicLattice m(detail::int_field(j, "p"), j.at("y").get<IntVector>());
  require_same_dim(static_cast<std::size_t>(m.dim()), static_cast<std::size_t>(d));
  WidthCertificate w{detail::int_field(j, "width"), j.at("xi").get<IntVector>(), std::nullopt};
  Simplex s(j.at("simplex").at("vertices").get<std::vector<IntVector>>());
  SearchMeta meta;
  meta.seed = static_cast<std::uint64_t>(detail::int_field(j, "seed"));
  meta.mode = j.at("mode").get<std::string>();
  meta.timestamp = j.value("timestamp", "");
  meta.version = j.at("version").get<std::string>();
  return {std::move(m), std::move(w), FreenessCertificate{Verdict::free, std::nullopt}, std::move(s),
          std::move(meta)};
}

inline std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Appends a self-verified record. Throws VerificationFailure otherwise.
inline void catalog_append(const std::filesystem::path &path, SearchRecord record) {
  auto issues = verify_record(record);
  if (!issues.empty()) throw VerificationFailure("refusing to append: " + issues.front());
  if (record.meta.timestamp.empty()) record.meta.timestamp = utc_timestamp();
  std::ofstream out(path, std::ios::app);
  out << to_json(record).dump() << '\n';
  if (!out) throw std::runtime_error("cannot append to catalog " + path.string());
}

struct CatalogIssue {
  std::size_t line = 0; // 1-based
  std::string message;
};

struct CatalogReport {
  std::size_t records = 0;
  std::size_t verified = 0;
  std::vector<CatalogIssue> issues;

  bool ok() const { return issues.empty(); }
};

/// Re-derives every certificate in the catalog. Unparseable lines are
/// reported with their line numbers, never skipped.
inline CatalogReport catalog_verify(const std::filesystem::path &path) {
  CatalogReport report;
  std::ifstream in(path);
  if (!in) {
    report.issues.push_back({0, "cannot open catalog " + path.string()});
    return report;
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++report.records;
    try {
      auto rec = search_record_from_json(nlohmann::json::parse(line));
      auto issues = verify_record(rec);
      for (auto &msg : issues) report.issues.push_back({lineno, std::move(msg)});
      if (issues.empty()) ++report.verified;
    } catch (const std::exception &e) {
      report.issues.push_back({lineno, std::string("corrupt record: ") + e.what()});
    }
  }
  return report;
}

} // namespace latwidth
