#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "grass_degen/initial_forms.hpp"

using namespace grass_degen;

namespace {

MultiIndex mi(std::initializer_list<int> e, int n = 6) { return MultiIndex(e, n); }

ValuationVector vv(std::vector<int> v) { return ValuationVector(std::move(v)); }

}  // namespace

TEST(Order, Examples) {
  const auto s = IteratedSequence::standard(6);
  const auto a = vv({1, 0, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(order_compare(s, a, a), std::strong_ordering::equal);
  EXPECT_EQ(order_compare(s, a, vv({0, 0, 0, 0, 0, 0, 0, 0, 1})), std::strong_ordering::greater);
  EXPECT_EQ(order_compare(s, vv({1, 0, 0, 0, 1, 0, 0, 0, 1}), vv({1, 0, 0, 0, 0, 1, 0, 1, 0})),
            std::strong_ordering::less);
  EXPECT_THROW(order_compare(s, a, vv({1})), DimensionError);
}

TEST(InitialForm, StandardExample) {
  const auto s = IteratedSequence::standard(6);
  const auto m = weighting_matrix(s);
  const auto r = *plucker_relation(mi({1, 2}), mi({3, 4, 5, 6}));
  const auto form = initial_form(m, r);
  ASSERT_TRUE(form.is_binomial);
  ASSERT_EQ(form.initial_terms.size(), 2u);
  EXPECT_EQ(form.initial_terms[0].sign, -1);
  EXPECT_EQ(form.initial_terms[0].factors, Monomial(mi({1, 2, 3}), mi({4, 5, 6})));
  EXPECT_EQ(form.initial_terms[1].sign, 1);
  EXPECT_EQ(form.initial_terms[1].factors, Monomial(mi({1, 2, 4}), mi({3, 5, 6})));
  for (const auto& t : form.initial_terms) EXPECT_EQ(m.of(t.factors).coords(), (std::vector<int>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
}

TEST(Inequalities, StandardExample) {
  const auto s = IteratedSequence::standard(6);
  const auto m = weighting_matrix(s);
  const auto d = inequality_set(m, {*plucker_relation(mi({1, 2}), mi({3, 4, 5, 6}))});
  EXPECT_EQ(d.size(), 2u);
  EXPECT_TRUE(d.diffs().count({0, 0, 0, 0, -1, 1, 0, 1, -1}));
  EXPECT_TRUE(d.diffs().count({-1, 0, 1, 1, -1, 0, 0, 1, -1}));

  const auto all = inequality_set(s, m);
  EXPECT_LE(all.size(), 2 * all_relations(6).size());
  for (const auto& v : all.diffs()) {
    const auto lead = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    ASSERT_NE(lead, v.end());
    EXPECT_LT(*lead, 0);
  }
  std::ostringstream csv;
  d.write_csv(csv);
  EXPECT_EQ(csv.str(), "-1,0,1,1,-1,0,0,1,-1\n0,0,0,0,-1,1,0,1,-1\n");
}

TEST(Inequalities, ContentReducedAndChecked) {
  InequalitySet d(3);
  d.add({2, -4, 6});
  EXPECT_TRUE(d.diffs().count({1, -2, 3}));
  EXPECT_THROW(d.add({0, 0, 0}), DimensionError);
  EXPECT_THROW(d.add({1, 2}), DimensionError);
}

// For each relation: common Ψ value, two initial terms, and the ≺ comparator
// agrees with the lex shortcut.
TEST(InitialForm, BinomialAndOrderAgreement) {
  auto check = [](const IteratedSequence& s, const std::vector<PluckerRelation>& relations) {
    const auto m = weighting_matrix(s);
    for (const auto& r : relations) {
      const std::int64_t expected = r.I.sum() + r.J.sum() - 12;
      for (const auto& tv : term_valuations(s, m, r)) ASSERT_EQ(tv.psi, expected);
      const auto fast = initial_form(m, r);
      ASSERT_TRUE(fast.is_binomial) << s.to_string();
      ASSERT_EQ(initial_form_by_order(s, m, r).initial_terms, fast.initial_terms) << s.to_string();
    }
  };
  for (int n : {5, 6}) {
    const auto relations = all_relations(n);
    for_each_sequence(n, [&](const IteratedSequence& s) { check(s, relations); });
  }
  std::mt19937_64 rng(5);
  for (int n : {7, 8}) {
    const auto relations = all_relations(n);
    for (int trial = 0; trial < 25; ++trial) check(sequence_at(n, rng() % sequence_count(n)), relations);
  }
}
