#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "ragg/aggregators.hpp"
#include "ragg/catalog.hpp"
#include "ragg/guarantees.hpp"
#include "ragg/info_core.hpp"
#include "ragg/instance_io.hpp"
#include "ragg/substitutes.hpp"
#include "test_support.hpp"

namespace ragg {
namespace {

using testing::code_of;

SignalSubset parse_digits(const std::string& digits) {
  SignalSubset s;
  if (digits == "empty") return s;
  for (char c : digits) s = s.with(c - '1');
  return s;
}

// Mean of `x` over the states where expert 1 reports `label`.
double mean_where_first_is(const InfoStructure& info, const StateVariable& x, const std::string& label) {
  double mass = 0.0;
  double total = 0.0;
  for (std::size_t s = 0; s < info.num_states(); ++s) {
    if (info.states()[s].signals[0] != label) continue;
    mass += info.states()[s].prob;
    total += info.states()[s].prob * x[s];
  }
  return total / mass;
}

double measure(const CatalogEntry& e, const std::string& key) {
  const InfoStructure& info = e.structure;
  const SignalSubset one = SignalSubset::single(0);
  if (key.starts_with("v_")) return value(info, conditional_expectation(info, parse_digits(key.substr(2))));
  if (key == "weak") return check_weak(info).satisfied ? 1.0 : 0.0;
  if (key == "projective") return check_projective(info).satisfied ? 1.0 : 0.0;
  if (key.starts_with("pred_sigma1_")) {
    return mean_where_first_is(info, prediction(info, SignalSubset::single(1), one), key.substr(12));
  }
  if (key == "pred_error") {
    const SignalSubset two = SignalSubset::single(1);
    return mean_squared_distance(info, conditional_expectation(info, two), prediction(info, two, one));
  }
  if (key == "outcome_error_a") {
    return mean_squared_distance(info, info.outcome(), conditional_expectation(info, one));
  }
  if (key == "tabular_ratio") {
    const Setting setting = e.name.find("known-prior") != std::string::npos ? Setting::kKnownPrior
                                                                            : Setting::kPriorFree;
    return approximation_ratio(info, apply(info, optimal_tabular_aggregator(setting)));
  }
  if (key == "average_ratio") return approximation_ratio(info, apply(info, Strategy::average()));
  if (key == "all_zero_prob") {
    const auto forecasts = forecast_vectors(info);
    double p = 0.0;
    for (std::size_t s = 0; s < forecasts.size(); ++s) {
      bool zero = true;
      for (double f : forecasts[s]) zero = zero && std::abs(f) < 1e-12;
      if (zero) p += info.states()[s].prob;
    }
    return p;
  }
  ADD_FAILURE() << "unknown key " << key;
  return NAN;
}

TEST(Catalog, ExpectedQuantitiesReproduce) {
  const auto entries = catalog_entries();
  EXPECT_EQ(entries.size(), 9U);
  for (const CatalogEntry& e : entries) {
    EXPECT_FALSE(e.expected.empty()) << e.name;
    for (const auto& [key, want] : e.expected) {
      EXPECT_NEAR(measure(e, key), want, 1e-9) << e.name << " " << key;
    }
  }
}

TEST(Catalog, FixedShapes) {
  EXPECT_EQ(xor_structure().num_states(), 4U);
  EXPECT_EQ(same_bit_structure().num_states(), 2U);
  const InfoStructure ex = example_2x2();
  EXPECT_NEAR(ex.states()[0].prob, 0.3, 0.0);
  EXPECT_EQ(ex.states()[3].y, 2.0);
}

TEST(SecretSharing, ShapeAndValues) {
  const InfoStructure info = secret_sharing(3, 5);
  EXPECT_EQ(info.num_states(), 62U);
  for (SignalSubset a : enumerate_subsets(3)) {
    EXPECT_NEAR(value(info, conditional_expectation(info, a)), a.size() / 3.0, 1e-12) << to_string(a);
  }
  EXPECT_EQ(info.states()[0].signals[0].substr(0, 2), "1:");
  EXPECT_EQ(secret_sharing(2, 3).num_states(), 8U);
  // k = n: any n - 1 shares reveal nothing about the secret.
  for (const State& s : info.states()) EXPECT_TRUE(s.y == 1.0 || s.y == -1.0);
}

TEST(SecretSharing, Errors) {
  EXPECT_EQ(code_of([] { secret_sharing(3, 4); }), ErrorCode::kNotPrime);
  EXPECT_EQ(code_of([] { secret_sharing(3, 3); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { secret_sharing(5, 101); }), ErrorCode::kCapExceeded);
  EXPECT_EQ(code_of([] { secret_sharing(0, 5); }), ErrorCode::kInvalidInput);
}

TEST(Tight, Parameters) {
  const TightParameters pf = tight_parameters(Setting::kPriorFree, Sign::kPlus);
  EXPECT_NEAR(pf.p, 1.0 - std::sqrt(7.0) / 4.0, 1e-15);
  EXPECT_NEAR(pf.x, std::sqrt(14.0) - 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(tight_parameters(Setting::kPriorFree, Sign::kMinus).x, -pf.x);
  const TightParameters kp = tight_parameters(Setting::kKnownPrior, Sign::kPlus);
  EXPECT_NEAR(kp.p, (2.0 + std::sqrt(7.0)) / 12.0, 1e-15);
  EXPECT_NEAR(kp.x, 1.1824177, 1e-7);
}

TEST(Tight, PriorFreeForecastsAreUnitSigns) {
  const InfoStructure info = tight_structure(Setting::kPriorFree, Sign::kPlus);
  const StateVariable y1 = conditional_expectation(info, SignalSubset::single(0));
  EXPECT_NEAR(mean_where_first_is(info, y1, "1"), 1.0, 1e-12);
  EXPECT_NEAR(mean_where_first_is(info, y1, "-1"), -1.0, 1e-12);
  EXPECT_TRUE(check_projective(info).satisfied);
}

TEST(Tight, KnownPriorPairShareMoments) {
  const InfoStructure plus = tight_structure(Setting::kKnownPrior, Sign::kPlus);
  const InfoStructure minus = tight_structure(Setting::kKnownPrior, Sign::kMinus);
  EXPECT_NEAR(expectation(plus, plus.outcome()), 0.0, 1e-12);
  EXPECT_NEAR(expectation(minus, minus.outcome()), 0.0, 1e-12);
  EXPECT_NEAR(variance(plus, plus.outcome()), variance(minus, minus.outcome()), 1e-12);
  EXPECT_TRUE(check_projective(plus).satisfied);
  EXPECT_TRUE(check_projective(minus).satisfied);
}

TEST(CoinPosterior, Values) {
  EXPECT_DOUBLE_EQ(coin_posterior(1, 0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(coin_posterior(2, 0), 0.75);
  EXPECT_DOUBLE_EQ(coin_posterior(0, 0), 0.5);
  EXPECT_EQ(code_of([] { coin_posterior(-1, 0); }), ErrorCode::kInvalidInput);
}

TEST(RandomProjective, DeterministicAndProjective) {
  for (int n : {2, 3, 4}) {
    const InfoStructure a = random_projective_structure(n, 2, 1234);
    const InfoStructure b = random_projective_structure(n, 2, 1234);
    EXPECT_EQ(serialize_instance(a), serialize_instance(b));
    EXPECT_TRUE(check_projective(a).satisfied);
    EXPECT_GE(approximation_ratio(a, apply(a, Strategy::average())), prior_free_bound(n) - 1e-9);
  }
  EXPECT_NE(serialize_instance(random_projective_structure(3, 2, 1)),
            serialize_instance(random_projective_structure(3, 2, 2)));
  EXPECT_EQ(random_projective_structure(2, 3, 5).num_states(), 27U);
}

TEST(RandomProjective, Errors) {
  EXPECT_EQ(code_of([] { random_projective_structure(3, 2, 1, 0); }), ErrorCode::kAttemptsExhausted);
  EXPECT_EQ(code_of([] { random_projective_structure(12, 4, 1); }), ErrorCode::kCapExceeded);
  EXPECT_EQ(code_of([] { random_projective_structure(0, 2, 1); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { random_projective_structure(2, 1, 1); }), ErrorCode::kInvalidInput);
}

}  // namespace
}  // namespace ragg
