#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "latwidth/search.hpp"

namespace latwidth {
namespace {

std::set<IntVector> generators(const std::vector<SearchRecord> &records) {
  std::set<IntVector> out;
  for (const auto &r : records) out.insert(r.lattice.generator());
  return out;
}

class TempFile {
public:
  explicit TempFile(const std::string &name)
      : path_(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove(path_);
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

SearchRecord scarf_record() {
  CyclicLattice m(57, {34, 18, 26, 14, 1});
  return make_record(m, is_free_cyclic(m), width_of_lattice(m), {0, "manual"});
}

TEST(SearchExhaustive, ThreeDimensionsHasNoWidthTwo) {
  EXPECT_TRUE(search_exhaustive(3, 7, 2).empty());
}

TEST(SearchExhaustive, PlaneHasNoFreeLines) {
  EXPECT_TRUE(search_exhaustive(2, 5, 1).empty());
}

TEST(SearchExhaustive, ThreeFiveFindsTheKnownLattice) {
  auto records = search_exhaustive(3, 5, 1);
  EXPECT_EQ(records.size(), 9u);
  auto gens = generators(records);
  EXPECT_TRUE(gens.count({1, 2, 3}));
  for (const auto &r : records) {
    EXPECT_EQ(r.width.width, 1);
    EXPECT_TRUE(r.freeness.is_free());
    EXPECT_EQ(r.simplex.normalized_volume(), 5);
    EXPECT_TRUE(verify_record(r).empty());
  }
}

// Goldens from the first full d = 4 scan: p = 11 is the smallest prime with a
// lattice-free cyclic lattice of width 2, and it has 84 of them.
TEST(SearchExhaustive, FourDimensionsFirstWidthTwoAtEleven) {
  for (std::int64_t p : {2, 3, 5, 7}) EXPECT_TRUE(search_exhaustive(4, p, 2).empty()) << p;
  auto hits = search_exhaustive(4, 11, 2);
  ASSERT_EQ(hits.size(), 84u);
  EXPECT_EQ(hits.front().lattice.generator(), (IntVector{1, 1, 5, 7}));
  EXPECT_EQ(hits.front().width.width, 2);
  EXPECT_EQ(hits.front().width.minimizer, (IntVector{1, 0, -1, -1}));
  EXPECT_EQ(hits.back().lattice.generator(), (IntVector{1, 9, 9, 8}));
  EXPECT_TRUE(search_exhaustive(4, 11, 3).empty());
}

TEST(SearchExhaustive, SortedWidestFirst) {
  auto records = search_exhaustive(4, 19, 1);
  ASSERT_FALSE(records.empty());
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto &a = records[i - 1], &b = records[i];
    EXPECT_TRUE(a.width.width > b.width.width ||
                (a.width.width == b.width.width && a.lattice.generator() < b.lattice.generator()));
  }
}

TEST(SearchExhaustive, FreeLineCountMatchesCensus) {
  for (int d = 2; d <= 4; ++d)
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
      auto f = exact_f(d, p);
      EXPECT_EQ(BigInt(count_free_lines(d, p)), line_count(d, p) - f.count) << d << "," << p;
    }
}

TEST(SearchExhaustive, IndependentOfThreadCount) {
  auto one = search_exhaustive(4, 13, 1);
  auto four = search_exhaustive(4, 13, 1, {.threads = 4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].lattice, four[i].lattice);
    EXPECT_EQ(one[i].width.minimizer, four[i].width.minimizer);
  }
}

TEST(SearchRandom, CoversAllLinesWithLargeBudget) {
  auto random = search_random(3, 5, 10'000, 1);
  EXPECT_EQ(generators(random), generators(search_exhaustive(3, 5, 1)));
}

TEST(SearchRandom, DeterministicInSeed) {
  auto a = search_random(4, 13, 300, 42);
  auto b = search_random(4, 13, 300, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lattice, b[i].lattice);
    EXPECT_EQ(to_json(a[i]), to_json(b[i]));
  }
}

TEST(SearchRandom, RejectsZeroBudget) {
  EXPECT_THROW(search_random(3, 5, 0, 1), std::invalid_argument);
  EXPECT_THROW(search_random(3, 6, 10, 1), std::invalid_argument);
}

TEST(Catalog, AppendThenVerify) {
  TempFile file("latwidth_catalog_ok.jsonl");
  catalog_append(file.path(), scarf_record());
  for (const auto &r : search_exhaustive(3, 5, 1)) catalog_append(file.path(), r);
  auto report = catalog_verify(file.path());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.records, 10u);
  EXPECT_EQ(report.verified, 10u);
}

TEST(Catalog, ScarfRecordCarriesItsWidth) {
  auto r = scarf_record();
  EXPECT_EQ(r.width.width, 2);
  EXPECT_EQ(r.simplex.normalized_volume(), 57);
  auto j = to_json(r);
  EXPECT_EQ(j.at("p"), "57");
  EXPECT_EQ(j.at("width"), "2");
  auto back = search_record_from_json(j);
  EXPECT_EQ(back.lattice, r.lattice);
  EXPECT_EQ(back.simplex, r.simplex);
}

TEST(Catalog, EmptyFileVerifies) {
  TempFile file("latwidth_catalog_empty.jsonl");
  std::ofstream(file.path()).close();
  auto report = catalog_verify(file.path());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.records, 0u);
}

TEST(Catalog, TamperedWidthIsFlagged) {
  TempFile file("latwidth_catalog_tampered.jsonl");
  auto j = to_json(scarf_record());
  j["width"] = "3";
  std::ofstream(file.path()) << j.dump() << '\n';
  auto report = catalog_verify(file.path());
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.issues.front().line, 1u);
  EXPECT_NE(report.issues.front().message.find("width"), std::string::npos);
}

TEST(Catalog, CorruptLinesReportedWithLineNumbers) {
  TempFile file("latwidth_catalog_corrupt.jsonl");
  {
    std::ofstream out(file.path());
    out << to_json(scarf_record()).dump() << '\n';
    out << "{not json\n";
    out << to_json(scarf_record()).dump() << '\n';
    out << R"({"d": "3", "p": "5"})" << '\n';
  }
  auto report = catalog_verify(file.path());
  EXPECT_EQ(report.records, 4u);
  EXPECT_EQ(report.verified, 2u);
  ASSERT_EQ(report.issues.size(), 2u);
  EXPECT_EQ(report.issues[0].line, 2u);
  EXPECT_EQ(report.issues[1].line, 4u);
}

TEST(Catalog, RefusesToAppendNonFreeRecord) {
  TempFile file("latwidth_catalog_refuse.jsonl");
  CyclicLattice m(5, {1, 1, 1});
  auto rec = make_record(m, {Verdict::free, std::nullopt}, width_of_lattice(m), {0, "manual"});
  EXPECT_THROW(catalog_append(file.path(), rec), VerificationFailure);
  EXPECT_FALSE(std::filesystem::exists(file.path()));
}

} // namespace
} // namespace latwidth
