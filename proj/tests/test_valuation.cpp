#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "grass_degen/linear_algebra.hpp"
#include "grass_degen/sequences.hpp"
#include "grass_degen/valuation.hpp"
#include "oracles.hpp"

using namespace grass_degen;

namespace {

std::vector<oracle::Triple> levels_of(const IteratedSequence& s) {
  std::vector<oracle::Triple> out;
  for (const auto& t : s.levels()) out.push_back({t[0], t[1], t[2]});
  return out;
}

ValuationVector unit(std::size_t d, std::size_t pos) {
  ValuationVector v(d);
  v[pos] = 1;
  return v;
}

}  // namespace

TEST(Height, Values) {
  EXPECT_EQ(height(1, 6), 5);
  EXPECT_EQ(height(3, 4), 1);
  EXPECT_EQ(height(2, 5), 3);
  EXPECT_THROW(height(4, 4), InvalidRoot);
  EXPECT_THROW(height(5, 2), InvalidRoot);
}

TEST(Psi, Values) {
  const auto s = IteratedSequence::standard(6);
  EXPECT_EQ(psi(s, ValuationVector(9)), 0);
  EXPECT_EQ(psi(s, unit(9, 0)), 5);
  EXPECT_EQ(psi(s, ValuationVector(std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1})), 9);
  EXPECT_THROW(psi(s, ValuationVector(8)), DimensionError);
}

TEST(Valuation, StandardExamples) {
  const auto s = IteratedSequence::standard(6);
  EXPECT_EQ(compute_valuation(s, MultiIndex({4, 5, 6}, 6)).coords(), (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
  EXPECT_EQ(compute_valuation(s, MultiIndex({1, 2, 6}, 6)).coords(), (std::vector<int>{0, 0, 1, 0, 0, 0, 0, 0, 0}));
  for (const auto& t : enumerate_sequences(6)) {
    EXPECT_EQ(compute_valuation(t, MultiIndex({1, 2, 3}, 6)), ValuationVector(9));
  }
}

TEST(Support, StandardExamples) {
  const auto s = IteratedSequence::standard(6);
  EXPECT_EQ(pullback_support(s, MultiIndex({1, 2, 3}, 6)), SupportSet{ValuationVector(9)});
  EXPECT_EQ(pullback_support(s, MultiIndex({1, 2, 6}, 6)), SupportSet{unit(9, 2)});
  const auto big = pullback_support(s, MultiIndex({4, 5, 6}, 6));
  EXPECT_GT(big.size(), 1u);
  EXPECT_EQ(big.rbegin()->coords(), (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
}

// The library's support recursion against a direct expansion of the root
// operators acting on e1∧e2∧e3 (with coefficients, so cancellation would show).
TEST(Support, MatchesOperatorExpansion) {
  auto check = [](const IteratedSequence& s) {
    const auto expanded = oracle::pullback(s.n(), levels_of(s));
    for (const auto& K : all_multi_indices(3, s.n())) {
      const auto e = K.entries();
      auto hit = expanded.find({e[0], e[1], e[2]});
      ASSERT_NE(hit, expanded.end()) << K.to_string();
      std::set<std::vector<int>> mine;
      for (const auto& v : pullback_support(s, K)) mine.insert(v.coords());
      EXPECT_EQ(mine, oracle::support(hit->second)) << s.to_string() << " " << K.to_string();
      EXPECT_EQ(compute_valuation(s, K).coords(), *oracle::support(hit->second).rbegin())
          << s.to_string() << " " << K.to_string();
    }
  };
  for (const auto& s : enumerate_sequences(5)) check(s);
  for (std::size_t i = 0; i < sequence_count(6); i += 7) check(sequence_at(6, i));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) check(sequence_at(7, rng() % sequence_count(7)));
}

TEST(Support, WeightHomogeneityAndLexMax) {
  for (int n : {4, 5, 6}) {
    for_each_sequence(n, [&](const IteratedSequence& s) {
      for (const auto& K : all_multi_indices(3, n)) {
        const auto support = pullback_support(s, K);
        ASSERT_FALSE(support.empty());
        for (const auto& m : support) ASSERT_EQ(psi(s, m), K.sum() - 6) << s.to_string() << " " << K.to_string();
        const auto v = compute_valuation(s, K);
        ASSERT_EQ(v, *support.rbegin()) << s.to_string() << " " << K.to_string();
        for (std::size_t t = 0; t < s.level_count(); ++t) ASSERT_LE(v.triad_sum(t), 1);
      }
    });
  }
}

TEST(WeightingMatrix, ShapeAndZeroRow) {
  const auto m = weighting_matrix(IteratedSequence::standard(6));
  EXPECT_EQ(m.row_count(), 20u);
  EXPECT_EQ(m.column_count(), 9u);
  EXPECT_EQ(m.row(MultiIndex({1, 2, 3}, 6)), ValuationVector(9));
}

TEST(WeightingMatrix, TriangularWitness) {
  const auto m = weighting_matrix(IteratedSequence::standard(6));
  const char* rows[] = {"456", "156", "126", "345", "145", "125", "234", "134", "124"};
  std::vector<std::vector<int>> sub;
  for (const char* r : rows) sub.push_back(m.row(MultiIndex::parse(r, 6)).coords());
  bool lower = true, upper = true;
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(sub[i][i], 1) << rows[i];
    for (std::size_t j = 0; j < 9; ++j) {
      if (j > i && sub[i][j] != 0) lower = false;
      if (j < i && sub[i][j] != 0) upper = false;
    }
  }
  EXPECT_TRUE(lower || upper);
}

TEST(WeightingMatrix, FullRankForEverySequence) {
  for_each_sequence(6, [](const IteratedSequence& s) {
    const auto m = weighting_matrix(s);
    std::vector<std::vector<std::int64_t>> dense;
    for (const auto& row : m.rows()) dense.emplace_back(row.coords().begin(), row.coords().end());
    ASSERT_EQ(exact_rank(dense), 9u) << s.to_string();
  });
}

TEST(WeightingMatrix, Csv) {
  const auto m = weighting_matrix(IteratedSequence::standard(6));
  std::ostringstream out;
  m.write_csv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "plucker,v1,v2,v3,v4,v5,v6,v7,v8,v9");
  std::getline(in, line);
  EXPECT_EQ(line, "123,0,0,0,0,0,0,0,0,0");
  std::size_t count = 1;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 20u);
}
