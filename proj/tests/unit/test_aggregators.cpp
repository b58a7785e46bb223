#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "ragg/aggregators.hpp"
#include "ragg/catalog.hpp"
#include "ragg/guarantees.hpp"
#include "ragg/info_core.hpp"
#include "ragg/substitutes.hpp"
#include "test_support.hpp"

namespace ragg {
namespace {

using testing::code_of;
using testing::random_structure;

const double kSqrt7 = std::sqrt(7.0);

TEST(ForecastKey, RoundsToTwelveDecimals) {
  const double f[] = {1.0, -0.5, 1.0 / 3.0};
  EXPECT_EQ(forecast_key(f), "1.000000000000,-0.500000000000,0.333333333333");
  const double g[] = {1.0 / 3.0 + 1e-14};
  const double h[] = {1.0 / 3.0};
  EXPECT_EQ(forecast_key(g), forecast_key(h));
  const double negzero[] = {-0.0, -1e-15};
  EXPECT_EQ(forecast_key(negzero), "0.000000000000,0.000000000000");
}

TEST(Extremize, Formula) {
  const double f[] = {0.2, 0.6};
  EXPECT_NEAR(extremize_value(f, 0.5, 1.0), 0.4, 1e-15);
  EXPECT_NEAR(extremize_value(f, 0.5, 2.0), 0.3, 1e-15);
  EXPECT_NEAR(extremize_value(f, 0.5, 0.0), 0.5, 1e-15);
  EXPECT_EQ(code_of([] { Strategy::extremize(NAN); }), ErrorCode::kInvalidInput);
}

TEST(Extremize, AffineInDAndMatchesEndpoints) {
  const InfoStructure info = random_structure(17, 3, 3, 20);
  const StateVariable prior = apply(info, Strategy::prior_only());
  const StateVariable avg = apply(info, Strategy::average());
  const StateVariable at0 = apply(info, Strategy::extremize(0.0));
  const StateVariable at1 = apply(info, Strategy::extremize(1.0));
  const StateVariable at2 = apply(info, Strategy::extremize(2.5));
  for (std::size_t s = 0; s < info.num_states(); ++s) {
    EXPECT_NEAR(at0[s], prior[s], 1e-14);
    EXPECT_NEAR(at1[s], avg[s], 1e-14);
    EXPECT_NEAR(at2[s], prior[s] + 2.5 * (avg[s] - prior[s]), 1e-13);
  }
}

TEST(Strategy, NamesAndFlags) {
  EXPECT_EQ(Strategy::average().name(), "average");
  EXPECT_EQ(Strategy::extremize(1.5).name(), "extremize:1.5");
  EXPECT_EQ(Strategy::random_expert().name(), "random-expert");
  EXPECT_EQ(Strategy::prior_only().name(), "prior");
  EXPECT_TRUE(Strategy::extremize(1.0).uses_prior());
  EXPECT_FALSE(Strategy::average().uses_prior());
  EXPECT_FALSE(optimal_tabular_aggregator(Setting::kPriorFree).uses_prior());
  EXPECT_TRUE(optimal_tabular_aggregator(Setting::kKnownPrior).uses_prior());
}

TEST(Strategy, Errors) {
  const InfoStructure info = example_2x2();
  EXPECT_EQ(code_of([&] { apply(info, Strategy::random_expert()); }), ErrorCode::kKindMismatch);
  const double f[] = {1.0, 2.0};
  EXPECT_EQ(code_of([&] { Strategy::random_expert().evaluate(f, 0.0); }), ErrorCode::kKindMismatch);
  EXPECT_EQ(code_of([&] { Strategy::average().evaluate({}, 0.0); }), ErrorCode::kInvalidInput);
  strategy::Tabular partial;
  partial.table[forecast_key(f)] = 7.0;
  EXPECT_EQ(code_of([&] { apply(info, Strategy::tabular(partial)); }),
            ErrorCode::kUncoveredForecastTuple);
  partial.default_output = 1.0;
  const StateVariable out = apply(info, Strategy::tabular(partial));
  EXPECT_EQ(out.size(), 4U);
}

TEST(Strategy, TabularLookup) {
  strategy::Tabular t;
  const double f[] = {0.1, 0.2};
  t.table[forecast_key(f)] = 0.7;
  const Strategy s = Strategy::tabular(t);
  const double g[] = {0.1 + 1e-14, 0.2};
  EXPECT_EQ(s.evaluate(g, 0.0), 0.7);
}

TEST(RandomExpert, AveragesSingleValues) {
  const InfoStructure info = example_2x2();
  const double v1 = value(info, conditional_expectation(info, SignalSubset::single(0)));
  const double v2 = value(info, conditional_expectation(info, SignalSubset::single(1)));
  EXPECT_NEAR(random_expert_value(info), (v1 + v2) / 2.0, 1e-15);
}

TEST(RandomExpert, SecretSharingAttainsOneOverN) {
  const InfoStructure info = secret_sharing(3, 5);
  const double v_all = value(info, conditional_expectation(info, info.all_experts()));
  EXPECT_NEAR(v_all, 1.0, 1e-12);
  EXPECT_NEAR(random_expert_value(info) / v_all, 1.0 / 3.0, 1e-12);
}

TEST(RandomExpert, WeakSubstitutesGuarantee) {
  int weak_seen = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const InfoStructure info = random_structure(seed, n, 2, 5);
    if (!check_weak(info).satisfied) continue;
    ++weak_seen;
    const double v_all = value(info, conditional_expectation(info, info.all_experts()));
    EXPECT_GE(random_expert_value(info), v_all / n - 1e-9) << "seed " << seed;
  }
  EXPECT_GT(weak_seen, 10);
}

TEST(TightInstances, TabularAndAveragingRatios) {
  for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
    const InfoStructure pf = tight_structure(Setting::kPriorFree, sign);
    EXPECT_NEAR(approximation_ratio(pf, apply(pf, optimal_tabular_aggregator(Setting::kPriorFree))),
                (3.0 + kSqrt7) / 8.0, 1e-9);
    EXPECT_GE(approximation_ratio(pf, apply(pf, Strategy::average())), prior_free_bound(2) - 1e-9);
    const InfoStructure kp = tight_structure(Setting::kKnownPrior, sign);
    EXPECT_NEAR(approximation_ratio(kp, apply(kp, optimal_tabular_aggregator(Setting::kKnownPrior))),
                (7.0 * kSqrt7 - 17.0) / 2.0, 1e-9);
  }
}

TEST(TightInstances, ForecastPairsIndistinguishable) {
  for (Setting setting : {Setting::kPriorFree, Setting::kKnownPrior}) {
    auto pairs = [&](Sign sign) {
      std::set<std::string> out;
      for (const auto& f : forecast_vectors(tight_structure(setting, sign))) out.insert(forecast_key(f));
      return out;
    };
    EXPECT_EQ(pairs(Sign::kPlus), pairs(Sign::kMinus));
    const double f[] = {1.0, -1.0};
    EXPECT_TRUE(pairs(Sign::kPlus).contains(forecast_key(f)));
  }
}

// The minimax aggregator answers 0 on mixed forecasts: a 1-D search over that
// output finds no better worst case across the pair.
TEST(TightInstances, ZeroIsTheBestMixedOutput) {
  for (Setting setting : {Setting::kPriorFree, Setting::kKnownPrior}) {
    const Strategy base = optimal_tabular_aggregator(setting);
    const auto& table = std::get<strategy::Tabular>(base.kind()).table;
    auto worst_case = [&](double mixed) {
      strategy::Tabular t{table, std::nullopt};
      const double m1[] = {1.0, -1.0};
      const double m2[] = {-1.0, 1.0};
      t.table[forecast_key(m1)] = mixed;
      t.table[forecast_key(m2)] = mixed;
      const Strategy s = Strategy::tabular(t, base.uses_prior());
      double worst = INFINITY;
      for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
        const InfoStructure info = tight_structure(setting, sign);
        worst = std::min(worst, approximation_ratio(info, apply(info, s)));
      }
      return worst;
    };
    const double at_zero = worst_case(0.0);
    for (double m = -2.0; m <= 2.0; m += 0.01) {
      EXPECT_LE(worst_case(m), at_zero + 1e-12) << "mixed output " << m;
    }
  }
}

TEST(Soundness, CatalogProjectiveInstancesMeetGuarantees) {
  for (const CatalogEntry& e : catalog_entries()) {
    const InfoStructure& info = e.structure;
    if (!check_projective(info).satisfied) continue;
    const int n = info.n_experts();
    EXPECT_GE(approximation_ratio(info, apply(info, Strategy::average())), prior_free_bound(n) - 1e-9)
        << e.name;
    EXPECT_GE(approximation_ratio(info, apply(info, Strategy::extremize(known_prior_d(n)))),
              known_prior_bound(n) - 1e-9)
        << e.name;
  }
}

TEST(Soundness, XorAveragingIsWorthless) {
  const InfoStructure info = xor_structure();
  EXPECT_NEAR(approximation_ratio(info, apply(info, Strategy::average())), 0.0, 1e-15);
}

}  // namespace
}  // namespace ragg
