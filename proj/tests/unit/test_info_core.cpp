#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "ragg/catalog.hpp"
#include "ragg/error.hpp"
#include "ragg/info_core.hpp"
#include "test_support.hpp"

namespace ragg {
namespace {

using testing::as_vector;
using testing::code_of;
using testing::message_of;
using testing::brute_conditional;
using testing::brute_msd;
using testing::outcome_values;
using testing::random_structure;

TEST(SignalSubset, SetAlgebra) {
  const SignalSubset a = SignalSubset::of({0, 2});
  EXPECT_EQ(a.size(), 2);
  EXPECT_TRUE(a.contains(2));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ(a.max_member(), 2);
  EXPECT_EQ(SignalSubset{}.max_member(), -1);
  EXPECT_EQ(a.with(1), SignalSubset::all(3));
  EXPECT_EQ(a.without(0), SignalSubset::single(2));
  EXPECT_TRUE(a.is_subset_of(SignalSubset::all(3)));
  EXPECT_EQ(SignalSubset::all(3) - a, SignalSubset::single(1));
  EXPECT_EQ(SignalSubset::all(64).size(), 64);
}

TEST(SignalSubset, PrintsOneBased) {
  EXPECT_EQ(to_string(SignalSubset{}), "{}");
  EXPECT_EQ(to_string(SignalSubset::of({0, 2})), "{1,3}");
}

TEST(SignalSubset, EnumerationOrder) {
  std::vector<std::string> got;
  for (SignalSubset s : enumerate_subsets(3)) got.push_back(to_string(s));
  const std::vector<std::string> want = {"{}",    "{1}",   "{2}",   "{3}",
                                         "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"};
  EXPECT_EQ(got, want);
  EXPECT_EQ(enumerate_subsets(0).size(), 1U);
}

TEST(InfoStructureValidation, RejectsBadProbabilities) {
  const auto make = [](double p0, double p1) {
    return [=] { InfoStructure(1, {State{p0, {"a"}, 0.0}, State{p1, {"b"}, 1.0}}); };
  };
  EXPECT_EQ(code_of(make(0.0, 1.0)), ErrorCode::kInvalidInput);
  EXPECT_NE(message_of(make(0.0, 1.0)).find("states[0].prob"), std::string::npos);
  EXPECT_EQ(code_of(make(-0.1, 1.1)), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of(make(0.5, 0.4)), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of(make(0.5, 0.5 + 1e-9)), ErrorCode::kInvalidInput);
  EXPECT_NO_THROW(InfoStructure(1, {State{0.5, {"a"}, 0.0}, State{0.5 + 1e-9, {"b"}, 1.0}},
                                ValidationOptions{.renormalize = true}));
  EXPECT_EQ(code_of([] {
              InfoStructure(1, {State{0.5, {"a"}, 0.0}, State{0.5 + 1e-5, {"b"}, 1.0}},
                            ValidationOptions{.renormalize = true});
            }),
            ErrorCode::kInvalidInput);
}

TEST(InfoStructureValidation, RejectsShapeErrors) {
  EXPECT_EQ(code_of([] { InfoStructure(0, {State{1.0, {}, 0.0}}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { InfoStructure(65, {State{1.0, {}, 0.0}}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { InfoStructure(1, {}); }), ErrorCode::kInvalidInput);
  const auto short_signals = [] { InfoStructure(2, {State{1.0, {"x"}, 0.0}}); };
  EXPECT_EQ(code_of(short_signals), ErrorCode::kInvalidInput);
  EXPECT_NE(message_of(short_signals).find("states[0].signals"), std::string::npos);
  EXPECT_EQ(code_of([] { InfoStructure(1, {State{1.0, {"x"}, NAN}}); }), ErrorCode::kInvalidInput);
}

TEST(InfoStructure, RenormalizesWhenAsked) {
  const InfoStructure info(1, {State{0.5, {"a"}, 0.0}, State{0.5 + 1e-7, {"b"}, 1.0}},
                           ValidationOptions{.renormalize = true});
  double total = 0.0;
  for (double p : info.probs()) total += p;
  EXPECT_NEAR(total, 1.0, 1e-15);
}

TEST(InfoStructure, LabelsAreOpaque) {
  // "0" and "00" are different labels even though they parse to equal numbers.
  const InfoStructure info(1, {State{0.5, {"0"}, 0.0}, State{0.5, {"00"}, 1.0}});
  EXPECT_EQ(info.alphabet_size(0), 2);
  EXPECT_NEAR(value(info, conditional_expectation(info, SignalSubset::single(0))), 0.25, 1e-15);
}

TEST(InfoStructure, PartitionNumbersCellsByFirstAppearance) {
  const InfoStructure info = example_2x2();
  EXPECT_EQ(info.partition(SignalSubset::single(0)), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(info.partition(SignalSubset::single(1)), (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(info.partition(SignalSubset{}), (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(info.partition(info.all_experts()), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(code_of([&] { info.partition(SignalSubset::single(2)); }), ErrorCode::kInvalidInput);
}

TEST(InfoCore, ExampleValues) {
  const InfoStructure info = example_2x2();
  const SignalSubset a = SignalSubset::single(0);
  const SignalSubset b = SignalSubset::single(1);
  EXPECT_NEAR(expectation(info, info.outcome()), 1.0, 1e-15);
  const StateVariable yb = conditional_expectation(info, b);
  const StateVariable pred = prediction(info, b, a);
  const double want_yb[] = {0.4, 1.6, 0.4, 1.6};
  const double want_pred[] = {0.88, 0.88, 1.12, 1.12};
  for (std::size_t s = 0; s < 4; ++s) {
    EXPECT_NEAR(yb[s], want_yb[s], 1e-12);
    EXPECT_NEAR(pred[s], want_pred[s], 1e-12);
  }
  EXPECT_NEAR(mean_squared_distance(info, yb, pred), 0.3456, 1e-12);
  EXPECT_NEAR(mean_squared_distance(info, info.outcome(), conditional_expectation(info, a)), 0.24,
              1e-12);
}

TEST(InfoCore, ConditionalExpectationMatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const InfoStructure info = random_structure(seed, n, 3, 12);
    const auto y = outcome_values(info);
    for (SignalSubset a : enumerate_subsets(n)) {
      const auto want = brute_conditional(info, y, a);
      const auto got = as_vector(conditional_expectation(info, a));
      for (std::size_t s = 0; s < want.size(); ++s) ASSERT_NEAR(got[s], want[s], 1e-12);
      for (SignalSubset b : enumerate_subsets(n)) {
        const auto want_pred = brute_conditional(info, brute_conditional(info, y, b), a);
        const auto got_pred = as_vector(prediction(info, b, a));
        for (std::size_t s = 0; s < want.size(); ++s) ASSERT_NEAR(got_pred[s], want_pred[s], 1e-12);
      }
    }
  }
}

TEST(InfoCore, ValueAndDistanceMatchBruteForce) {
  const InfoStructure info = random_structure(7, 3, 2, 10);
  const auto y = outcome_values(info);
  double mean = 0.0;
  for (std::size_t s = 0; s < y.size(); ++s) mean += info.states()[s].prob * y[s];
  const std::vector<double> prior(y.size(), mean);
  for (SignalSubset a : enumerate_subsets(3)) {
    const auto ya = brute_conditional(info, y, a);
    const double want = brute_msd(info, y, prior) - brute_msd(info, y, ya);
    EXPECT_NEAR(value(info, conditional_expectation(info, a)), want, 1e-12);
  }
  EXPECT_NEAR(variance(info, info.outcome()), brute_msd(info, y, prior), 1e-12);
}

TEST(InfoCore, PythagoreanIdentity) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const InfoStructure info = random_structure(seed, n, 2, 16);
    for (SignalSubset outer : enumerate_subsets(n)) {
      const StateVariable b = conditional_expectation(info, outer);
      // C: an arbitrary function of the A'-cells.
      const std::vector<int> cells = info.partition(outer);
      std::vector<double> c(cells.size());
      for (std::size_t s = 0; s < cells.size(); ++s) c[s] = std::sin(3.0 * cells[s] + seed);
      const StateVariable cvar(c);
      ASSERT_TRUE(is_measurable(info, cvar, outer));
      const StateVariable& y = info.outcome();
      EXPECT_NEAR(mean_squared_distance(info, y, cvar),
                  mean_squared_distance(info, y, b) + mean_squared_distance(info, b, cvar), 1e-9);
    }
  }
}

TEST(InfoCore, TowerProperty) {
  const InfoStructure info = random_structure(3, 3, 3, 20);
  for (SignalSubset a : enumerate_subsets(3)) {
    for (SignalSubset b : enumerate_subsets(3)) {
      const StateVariable once = prediction(info, b, a);
      const StateVariable twice = conditional_expectation(info, once, a);
      for (std::size_t s = 0; s < info.num_states(); ++s) EXPECT_NEAR(once[s], twice[s], 1e-12);
      EXPECT_TRUE(is_measurable(info, once, a));
      if (a.is_subset_of(b)) {
        // A coarser subset's prediction of B is just Y_A.
        const StateVariable ya = conditional_expectation(info, a);
        for (std::size_t s = 0; s < info.num_states(); ++s) EXPECT_NEAR(once[s], ya[s], 1e-12);
      }
    }
  }
}

TEST(InfoCore, MonotoneValueAndDifferenceIdentity) {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const InfoStructure info = random_structure(seed, 3, 2, 14);
    for (SignalSubset a : enumerate_subsets(3)) {
      for (SignalSubset b : enumerate_subsets(3)) {
        if (!a.is_subset_of(b)) continue;
        const StateVariable ya = conditional_expectation(info, a);
        const StateVariable yb = conditional_expectation(info, b);
        EXPECT_LE(value(info, ya), value(info, yb) + 1e-12);
        EXPECT_NEAR(value(info, yb) - value(info, ya), mean_squared_distance(info, yb, ya), 1e-9);
      }
    }
  }
}

TEST(InfoCore, AveragingDecomposition) {
  for (std::uint64_t seed = 300; seed < 320; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const InfoStructure info = random_structure(seed, n, 3, 18);
    const StateVariable full = conditional_expectation(info, info.all_experts());
    std::vector<StateVariable> ys;
    std::vector<double> avg(info.num_states(), 0.0);
    for (int i = 0; i < n; ++i) {
      ys.push_back(conditional_expectation(info, SignalSubset::single(i)));
      for (std::size_t s = 0; s < avg.size(); ++s) avg[s] += ys.back()[s] / n;
    }
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) rhs += mean_squared_distance(info, full, ys[i]) / n;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        rhs -= mean_squared_distance(info, ys[i], ys[j]) / (static_cast<double>(n) * n);
      }
    }
    EXPECT_NEAR(mean_squared_distance(info, full, StateVariable(avg)), rhs, 1e-9);
  }
}

TEST(InfoCore, RatioAtMostOneForSignalFunctions) {
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    const InfoStructure info = random_structure(seed, 2, 3, 12);
    const std::vector<int> cells = info.partition(info.all_experts());
    std::vector<double> z(cells.size());
    for (std::size_t s = 0; s < z.size(); ++s) z[s] = std::cos(1.7 * cells[s] + seed);
    EXPECT_LE(approximation_ratio(info, StateVariable(z)), 1.0 + 1e-12);
    EXPECT_NEAR(approximation_ratio(info, conditional_expectation(info, info.all_experts())), 1.0,
                1e-12);
  }
}

TEST(InfoCore, RatioRejectsDegenerateStructure) {
  const InfoStructure flat(1, {State{0.5, {"a"}, 2.0}, State{0.5, {"b"}, 2.0}});
  EXPECT_EQ(code_of([&] { approximation_ratio(flat, flat.outcome()); }),
            ErrorCode::kDegenerateStructure);
  EXPECT_EQ(code_of([] {
              const InfoStructure blind(1, {State{0.5, {"a"}, 0.0}, State{0.5, {"a"}, 1.0}});
              approximation_ratio(blind, blind.outcome());
            }),
            ErrorCode::kDegenerateStructure);
}

TEST(InfoCore, RatioAcceptsNonMeasurableEstimates) {
  // Y itself is not a function of the signals here; only v(Z)/v(Y_[n]) applies.
  const InfoStructure info(1, {State{0.25, {"a"}, 0.0}, State{0.25, {"a"}, 2.0},
                               State{0.5, {"b"}, 4.0}});
  const double v_full = value(info, conditional_expectation(info, info.all_experts()));
  EXPECT_NEAR(approximation_ratio(info, info.outcome()), value(info, info.outcome()) / v_full, 1e-12);
}

TEST(InfoCore, RejectsMisalignedVariables) {
  const InfoStructure info = example_2x2();
  EXPECT_EQ(code_of([&] { expectation(info, StateVariable({1.0, 2.0})); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { StateVariable({1.0, INFINITY}); }), ErrorCode::kInvalidInput);
}

TEST(AffineProjection, SlopeMatchesGridSearch) {
  const InfoStructure info = random_structure(11, 2, 3, 15);
  const StateVariable target = conditional_expectation(info, SignalSubset::single(1));
  const StateVariable basis = conditional_expectation(info, SignalSubset::single(0));
  const AffineProjection proj = affine_projection(info, target, basis);
  ASSERT_FALSE(proj.degenerate_basis);
  const double mt = expectation(info, target);
  const double mb = expectation(info, basis);
  const auto loss = [&](double beta) {
    std::vector<double> t(info.num_states());
    for (std::size_t s = 0; s < t.size(); ++s) t[s] = mt + beta * (basis[s] - mb);
    return mean_squared_distance(info, target, StateVariable(t));
  };
  double best_beta = 0.0;
  for (double beta = -5.0; beta <= 5.0; beta += 1e-4) {
    if (loss(beta) < loss(best_beta)) best_beta = beta;
  }
  EXPECT_NEAR(proj.slope, best_beta, 1e-4);
  EXPECT_NEAR(mean_squared_distance(info, target, proj.projection), loss(proj.slope), 1e-15);
  EXPECT_LE(mean_squared_distance(info, target, proj.projection), loss(best_beta) + 1e-15);
}

TEST(AffineProjection, PredictionIsCloserThanAffineFit) {
  const InfoStructure info = example_2x2();
  const StateVariable y2 = conditional_expectation(info, SignalSubset::single(1));
  const StateVariable y1 = conditional_expectation(info, SignalSubset::single(0));
  const AffineProjection t2 = affine_projection(info, y2, y1);
  const double pred_err =
      mean_squared_distance(info, y2, prediction(info, SignalSubset::single(1), SignalSubset::single(0)));
  EXPECT_LE(pred_err, mean_squared_distance(info, y2, t2.projection) + 1e-12);
}

TEST(AffineProjection, DegenerateBasisFallsBackToMean) {
  const InfoStructure info = example_2x2();
  const AffineProjection proj =
      affine_projection(info, info.outcome(), StateVariable::constant(info.num_states(), 3.0));
  EXPECT_TRUE(proj.degenerate_basis);
  for (double v : proj.projection.values()) EXPECT_NEAR(v, 1.0, 1e-15);
}

}  // namespace
}  // namespace ragg
