#include <random>

#include <gtest/gtest.h>

#include "grass_degen/combinatorics.hpp"
#include "grass_degen/linear_algebra.hpp"
#include "oracles.hpp"

using namespace grass_degen;

namespace {

MultiIndex mi(std::initializer_list<int> entries, int n = 6) { return MultiIndex(entries, n); }

std::string render(const PluckerRelation& r) {
  std::string out;
  for (const auto& t : r.terms) {
    out += t.sign > 0 ? "+" : "-";
    out += "p" + t.factors.first.to_string() + "p" + t.factors.second.to_string();
  }
  return out;
}

}  // namespace

TEST(MultiIndex, ValidatesEntries) {
  EXPECT_NO_THROW(mi({1, 2, 3}));
  EXPECT_THROW(mi({2, 1, 3}), InvalidIndex);
  EXPECT_THROW(mi({1, 1, 3}), InvalidIndex);
  EXPECT_THROW(mi({0, 1, 3}), InvalidIndex);
  EXPECT_THROW(mi({1, 2, 7}), InvalidIndex);
}

TEST(MultiIndex, PrintsAndParses) {
  EXPECT_EQ(mi({1, 2, 4}).to_string(), "124");
  EXPECT_EQ(MultiIndex::parse("356", 6), mi({3, 5, 6}));
  EXPECT_EQ(MultiIndex({1, 9, 10}, 10).to_string(), "1,9,10");
  EXPECT_EQ(MultiIndex::parse("1,9,10", 10), MultiIndex({1, 9, 10}, 10));
  EXPECT_THROW(MultiIndex::parse("1a3", 6), ParseError);
  EXPECT_EQ(mi({1, 2, 6}).sum(), 9);
}

TEST(MultiIndex, InsertIndex) {
  EXPECT_EQ(*insert_index(mi({1, 2}), 4), mi({1, 2, 4}));
  EXPECT_FALSE(insert_index(mi({1, 2}), 1).has_value());
  EXPECT_EQ(*insert_index(mi({2, 5}), 3), mi({2, 3, 5}));
  EXPECT_THROW(insert_index(mi({1, 2}), 7), InvalidIndex);
  EXPECT_THROW(insert_index(mi({1, 2}), 0), InvalidIndex);
}

TEST(MultiIndex, RemoveIndex) {
  EXPECT_EQ(remove_index(mi({3, 4, 5, 6}), 4), mi({3, 5, 6}));
  EXPECT_EQ(remove_index(mi({1, 2, 3, 5}), 1), mi({2, 3, 5}));
  EXPECT_EQ(remove_index(mi({2, 3, 4, 6}), 6), mi({2, 3, 4}));
  EXPECT_THROW(remove_index(mi({2, 3, 4, 6}), 5), InvalidIndex);
}

TEST(MultiIndex, Enumeration) {
  EXPECT_EQ(binomial_coefficient(6, 3), 20);
  EXPECT_EQ(binomial_coefficient(7, 4), 35);
  const auto all = all_multi_indices(3, 6);
  ASSERT_EQ(all.size(), 20u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(all.front(), mi({1, 2, 3}));
  EXPECT_EQ(all.back(), mi({4, 5, 6}));
  const auto& vars = *shared_variable_index(6);
  for (std::size_t i = 0; i < vars.size(); ++i) EXPECT_EQ(vars.index_of(vars.at(i)), static_cast<int>(i));
}

TEST(PluckerRelation, FourTermExample) {
  const auto r = plucker_relation(mi({1, 2}), mi({3, 4, 5, 6}));
  ASSERT_TRUE(r);
  EXPECT_EQ(render(*r), "-p123p456+p124p356-p125p346+p126p345");
}

TEST(PluckerRelation, ThreeTermAndZero) {
  const auto r = plucker_relation(mi({1, 2}), mi({1, 3, 4, 5}));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->terms.size(), 3u);
  // j = 1 repeats an index of I and drops out.
  EXPECT_EQ(render(*r), "+p123p145-p124p135+p125p134");
  EXPECT_FALSE(plucker_relation(mi({1, 2}), mi({1, 2, 3, 4})).has_value());
}

TEST(PluckerRelation, Counts) {
  EXPECT_TRUE(all_relations(4).empty());
  EXPECT_THROW(all_relations(3), InvalidSize);
  for (const auto& r : all_relations(5)) EXPECT_EQ(r.terms.size(), 3u);

  const auto rel6 = all_relations(6);
  ASSERT_EQ(rel6.size(), 135u);
  std::size_t four = 0, three = 0;
  for (const auto& r : rel6) {
    int common = 0;
    for (int pos = 0; pos < 4; ++pos) common += r.I.contains(r.J[pos]);
    EXPECT_EQ(r.terms.size(), common == 0 ? 4u : 3u);
    (r.terms.size() == 4 ? four : three)++;
  }
  EXPECT_EQ(four, 15u);
  EXPECT_EQ(three, 120u);
}

TEST(PluckerRelation, RegeneratesIdentically) {
  for (const auto& r : all_relations(6)) {
    const auto again = plucker_relation(r.I, r.J);
    ASSERT_TRUE(again);
    EXPECT_EQ(again->terms, r.terms);
  }
}

// Every relation must vanish on the 3x3 minors of any 3 x n matrix.
TEST(PluckerRelation, VanishesOnRandomPoints) {
  std::mt19937_64 rng(7);
  for (int n : {5, 6, 7}) {
    const auto relations = all_relations(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = oracle::random_matrix(n, rng);
      for (const auto& r : relations) {
        mpz_class value = 0;
        for (const auto& t : r.terms) {
          const auto a = t.factors.first.entries();
          const auto b = t.factors.second.entries();
          value += t.sign * oracle::minor(m, {a[0], a[1], a[2]}) * oracle::minor(m, {b[0], b[1], b[2]});
        }
        ASSERT_EQ(value, 0) << "n=" << n << " I=" << r.I.to_string() << " J=" << r.J.to_string();
      }
    }
  }
}

// The library relations span the same space as the oracle's alternating expansion.
TEST(PluckerRelation, DegreeTwoRankMatchesOracle) {
  const int n = 6;
  const auto vars = shared_variable_index(n);
  const auto qs = oracle::plucker_quadrics(n);
  auto oracle_rows = oracle::macaulay(qs, 20, 2);

  std::vector<oracle::Quadric> mine;
  for (const auto& r : all_relations(n)) {
    oracle::Quadric q;
    for (const auto& t : r.terms) {
      q.emplace_back(t.sign, vars->index_of(t.factors.first), vars->index_of(t.factors.second));
    }
    mine.push_back(q);
  }
  const auto my_rows = oracle::macaulay(mine, 20, 2);

  auto to_mpz = [](const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<mpz_class>> out;
    for (const auto& row : rows) {
      out.emplace_back();
      for (auto x : row) out.back().push_back(static_cast<long>(x));
    }
    return out;
  };
  const std::size_t r_oracle = oracle::bareiss_rank(to_mpz(oracle_rows));
  const std::size_t r_mine = oracle::bareiss_rank(to_mpz(my_rows));
  auto stacked = oracle_rows;
  stacked.insert(stacked.end(), my_rows.begin(), my_rows.end());
  EXPECT_EQ(r_oracle, 35u);
  EXPECT_EQ(r_mine, 35u);
  EXPECT_EQ(oracle::bareiss_rank(to_mpz(stacked)), 35u);
  // 210 monomials minus the Hilbert function value in degree 2.
  EXPECT_EQ(mpz_class(210 - static_cast<long>(r_oracle)), oracle::grassmannian_hilbert(6, 2));
  EXPECT_EQ(exact_rank(my_rows), 35u);
}
