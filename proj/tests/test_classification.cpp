#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "grass_degen/classification.hpp"
#include "oracles.hpp"

using namespace grass_degen;

namespace {

MultiIndex mi(std::initializer_list<int> e, int n = 6) { return MultiIndex(e, n); }

std::vector<oracle::Bin> to_oracle(const IdealFingerprint& f) {
  const auto& vars = *shared_variable_index(f.n());
  std::vector<oracle::Bin> out;
  for (const auto& b : f.generators()) {
    out.push_back({{vars.index_of(b.lead.first), vars.index_of(b.lead.second)},
                   {vars.index_of(b.trail.first), vars.index_of(b.trail.second)},
                   b.sign});
  }
  return out;
}

// All n = 6 fingerprints with their labels, computed once.
struct Fixture {
  std::vector<std::pair<SequenceLabel, IdealFingerprint>> entries;
  std::map<SequenceLabel, std::set<IdealFingerprint>> by_label;

  Fixture() {
    const auto relations = all_relations(6);
    for_each_sequence(6, [&](const IteratedSequence& s) {
      auto f = fingerprint(weighting_matrix(s), relations);
      by_label[label_of(s)].insert(f);
      entries.emplace_back(label_of(s), std::move(f));
    });
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

const Classification& classification() {
  static const Classification c(6, fixture().entries);
  return c;
}

}  // namespace

TEST(Fingerprint, StandardContainsWorkedBinomial) {
  const auto f = fingerprint(weighting_matrix(IteratedSequence::standard(6)), all_relations(6));
  EXPECT_TRUE(f.contains({Monomial(mi({1, 2, 3}), mi({4, 5, 6})), Monomial(mi({1, 2, 4}), mi({3, 5, 6})), -1}));
  for (const auto& b : f.generators()) {
    EXPECT_LT(b.lead, b.trail);
    EXPECT_TRUE(b.sign == 1 || b.sign == -1);
  }
  EXPECT_TRUE(std::is_sorted(f.generators().begin(), f.generators().end()));
}

TEST(Fingerprint, CanonicalBinomial) {
  const SignedTerm a{-1, Monomial(mi({1, 2, 4}), mi({3, 5, 6}))};
  const SignedTerm b{-1, Monomial(mi({1, 2, 3}), mi({4, 5, 6}))};
  const auto c = canonical_binomial(a, b);
  EXPECT_EQ(c.lead, b.factors);
  EXPECT_EQ(c.sign, 1);
  EXPECT_THROW(canonical_binomial(a, a), Error);
}

TEST(Fingerprint, ConstantOnFibersDistinctAcrossLabels) {
  const auto& fx = fixture();
  ASSERT_EQ(fx.by_label.size(), 240u);
  std::set<IdealFingerprint> distinct;
  for (const auto& [label, fps] : fx.by_label) {
    EXPECT_EQ(fps.size(), 1u) << label.to_string();
    distinct.insert(*fps.begin());
  }
  EXPECT_EQ(distinct.size(), 240u);
  EXPECT_EQ(classification().fingerprints().size(), 240u);
}

TEST(Action, SignRuleExamples) {
  const auto s1 = SignedPermutation::transposition(1, 6);
  const auto& vars = *shared_variable_index(6);
  const auto [sign, image] = s1.act(vars.index_of(mi({1, 2, 3})));
  EXPECT_EQ(sign, -1);
  EXPECT_EQ(vars.at(image), mi({1, 2, 3}));
  const auto s3 = SignedPermutation::transposition(3, 6);
  const auto [sign2, image2] = s3.act(vars.index_of(mi({1, 3, 5})));
  EXPECT_EQ(sign2, 1);
  EXPECT_EQ(vars.at(image2), mi({1, 4, 5}));
  EXPECT_THROW(SignedPermutation::transposition(6, 6), InvalidIndex);
  EXPECT_THROW(SignedPermutation::transposition(0, 6), InvalidIndex);
}

TEST(Action, CoxeterRelationsOnFingerprints) {
  for (const auto& f : classification().fingerprints()) {
    for (int i = 1; i <= 5; ++i) {
      ASSERT_EQ(apply_transposition(i, apply_transposition(i, f)), f);
      if (i < 5) {
        auto g = f;
        for (int k = 0; k < 3; ++k) g = apply_transposition(i + 1, apply_transposition(i, g));
        ASSERT_EQ(g, f);
      }
      for (int j = i + 2; j <= 5; ++j) {
        ASSERT_EQ(apply_transposition(i, apply_transposition(j, f)), apply_transposition(j, apply_transposition(i, f)));
      }
    }
  }
}

TEST(Action, GroupHasAllElementsAndMatchesSortingSign) {
  const auto group = group_elements(6);
  ASSERT_EQ(group.size(), 720u);
  std::set<std::vector<int>> perms;
  for (const auto& g : group) perms.insert(g.permutation());
  EXPECT_EQ(perms.size(), 720u);

  // The BFS word action equals the direct p_K -> sgn · p_{σ(K)} action.
  const auto& f = classification().fingerprints().front();
  for (const auto& g : group) {
    std::vector<int> sigma(6);
    for (int x = 1; x <= 6; ++x) sigma[x - 1] = g(x);
    ASSERT_EQ(to_oracle(g.apply(f)), oracle::act(sigma, to_oracle(f), 6));
  }
}

TEST(Orbits, SingletonInvariantInput) {
  // p_123 p_456 - ... is not invariant; the empty ideal is.
  const auto orbits = compute_orbits({IdealFingerprint(6, {})}, 6);
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_EQ(orbits[0].cardinality(), 1u);
  EXPECT_EQ(orbits[0].external_images, 0u);
}

TEST(Orbits, TableSizes) {
  const auto& c = classification();
  std::vector<std::size_t> sizes;
  for (const auto& o : c.orbits()) sizes.push_back(o.cardinality());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{48, 48, 48, 96}));
  EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), 240u);
}

// Orbit partition against brute force: canonical form = min image over all 720 permutations.
TEST(Orbits, MatchBruteForcePartition) {
  const auto& c = classification();
  std::vector<int> sigma(6);
  std::vector<std::vector<int>> perms;
  std::iota(sigma.begin(), sigma.end(), 1);
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::set<std::vector<oracle::Bin>> input;
  for (const auto& f : c.fingerprints()) input.insert(to_oracle(f));
  std::map<std::vector<oracle::Bin>, std::set<std::size_t>> classes;
  for (std::size_t i = 0; i < c.fingerprints().size(); ++i) {
    const auto base = to_oracle(c.fingerprints()[i]);
    std::vector<oracle::Bin> best = base;
    for (const auto& p : perms) best = std::min(best, oracle::act(p, base, 6));
    classes[best].insert(i);
  }
  std::set<std::set<std::size_t>> expected;
  for (const auto& [key, members] : classes) expected.insert(members);
  std::set<std::set<std::size_t>> actual;
  for (const auto& o : c.orbits()) actual.insert({o.members.begin(), o.members.end()});
  EXPECT_EQ(actual, expected);
}

TEST(Orbits, LabelPatterns) {
  const auto& c = classification();
  const auto o2 = c.label_orbit_membership(SequenceLabel::parse("(1,3;2,1)", 6));
  const auto o3 = c.label_orbit_membership(SequenceLabel::parse("(3,1;2,1)", 6));
  EXPECT_EQ(o2.cardinality(), 48u);
  EXPECT_EQ(o3.cardinality(), 48u);
  EXPECT_EQ(c.symbolic_class(o2), "O2");
  EXPECT_EQ(c.symbolic_class(o3), "O3");

  // O2 is exactly the labels (k,s1;s2,k), O3 exactly (s1,k;s2,k).
  for (const auto& label : enumerate_labels(6)) {
    const auto& orbit = c.label_orbit_membership(label);
    const auto pattern = label_pattern(label);
    if (pattern == LabelPattern::FirstMatchesLast) {
      EXPECT_EQ(orbit.id, o2.id) << label.to_string();
    }
    if (pattern == LabelPattern::SecondMatchesLast) {
      EXPECT_EQ(orbit.id, o3.id) << label.to_string();
    }
    if (pattern == LabelPattern::Other) {
      EXPECT_NE(orbit.id, o2.id);
      EXPECT_NE(orbit.id, o3.id);
    }
  }
  std::multiset<std::string> classes;
  for (const auto& o : c.orbits()) classes.insert(c.symbolic_class(o));
  EXPECT_EQ(classes, (std::multiset<std::string>{"O1", "O2", "O3", "O4"}));
  for (const auto& o : c.orbits()) {
    if (c.symbolic_class(o) == "O4") {
      EXPECT_EQ(o.cardinality(), 96u);
    }
  }
}

TEST(Orbits, UnknownLabel) {
  const Classification one(6, {fixture().entries.front()});
  EXPECT_THROW(one.fingerprint_of(SequenceLabel(6, {{5, 4}, {4, 3}})), NotFound);
}

TEST(Orbits, SomeImagesLeaveTheSet) {
  std::size_t leaving = 0;
  for (const auto& o : classification().orbits()) leaving += o.external_images;
  EXPECT_GT(leaving, 0u);
}
