#include <gtest/gtest.h>

#include "ragg/catalog.hpp"
#include "ragg/revelation.hpp"
#include "ragg/substitutes.hpp"
#include "test_support.hpp"

namespace ragg {
namespace {

using testing::brute_conditional;
using testing::brute_msd;
using testing::code_of;
using testing::outcome_values;
using testing::random_structure;

void expect_witnesses_reproduce(const InfoStructure& info, const RevelationReport& r) {
  for (const RevelationWitness& w : r.witnesses) {
    EXPECT_TRUE(w.team.contains(w.expert));
    EXPECT_FALSE(w.revealers.contains(w.expert));
    const SignalSubset b2 = w.revealers.with(w.expert);
    EXPECT_NEAR(w.loss_reveal,
                mean_squared_distance(info, conditional_expectation(info, b2), prediction(info, b2, w.team)),
                1e-12);
    EXPECT_NEAR(w.loss_withhold,
                mean_squared_distance(info, conditional_expectation(info, w.revealers),
                                      prediction(info, w.revealers, w.team)),
                1e-12);
  }
}

TEST(Revelation, ExampleIsDominant) {
  const RevelationReport r = check_revelation_dominance(example_2x2());
  EXPECT_TRUE(r.dominant);
  EXPECT_TRUE(r.witnesses.empty());
  EXPECT_EQ(r.configurations_checked, 2U * 4U);
}

TEST(Revelation, SecretSharingIsNotDominant) {
  const InfoStructure info = secret_sharing(3, 5);
  const RevelationReport r = check_revelation_dominance(info);
  EXPECT_FALSE(r.dominant);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.configurations_checked, 3U * 16U);
  const RevelationWitness& w = r.witnesses.front();
  EXPECT_GT(w.loss_reveal, w.loss_withhold + r.tolerance);
  expect_witnesses_reproduce(info, r);
}

TEST(Revelation, XorIsNotDominant) {
  const InfoStructure info = xor_structure();
  const RevelationReport r = check_revelation_dominance(info);
  EXPECT_FALSE(r.dominant);
  expect_witnesses_reproduce(info, r);
}

TEST(Revelation, EquivalentToRestrictedProjective) {
  std::vector<InfoStructure> cases;
  for (const CatalogEntry& e : catalog_entries()) cases.push_back(e.structure);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    cases.push_back(random_structure(seed, 2 + static_cast<int>(seed % 2), 2, 5));
  }
  int dominant_seen = 0;
  for (const InfoStructure& info : cases) {
    const RevelationReport r = check_revelation_dominance(info);
    dominant_seen += r.dominant ? 1 : 0;
    EXPECT_EQ(r.dominant, check_projective_restricted(info).satisfied);
    expect_witnesses_reproduce(info, r);
  }
  EXPECT_GT(dominant_seen, 0);
  EXPECT_LT(dominant_seen, static_cast<int>(cases.size()));
}

TEST(Revelation, MatchesBruteForceLosses) {
  const InfoStructure info = random_structure(99, 3, 2, 12);
  const auto y = outcome_values(info);
  std::size_t violations = 0;
  for (int i = 0; i < 3; ++i) {
    for (std::uint64_t am = 0; am < 8; ++am) {
      for (std::uint64_t bm = 0; bm < 8; ++bm) {
        const SignalSubset a = SignalSubset::from_mask(am);
        const SignalSubset b = SignalSubset::from_mask(bm);
        if (!a.contains(i) || b.contains(i)) continue;
        const auto yb = brute_conditional(info, y, b);
        const auto yb2 = brute_conditional(info, y, b.with(i));
        const double withhold = brute_msd(info, yb, brute_conditional(info, yb, a));
        const double reveal = brute_msd(info, yb2, brute_conditional(info, yb2, a));
        if (reveal > withhold + 1e-9) ++violations;
      }
    }
  }
  const RevelationReport r = check_revelation_dominance(info);
  EXPECT_EQ(r.violation_count, violations);
  EXPECT_EQ(r.dominant, violations == 0);
}

TEST(Revelation, EnumerationCap) {
  const InfoStructure info = random_structure(3, 4, 2, 6);
  EXPECT_EQ(code_of([&] { check_revelation_dominance(info, RevelationOptions{.enumeration_cap = 3}); }),
            ErrorCode::kEnumerationCap);
}

}  // namespace
}  // namespace ragg
