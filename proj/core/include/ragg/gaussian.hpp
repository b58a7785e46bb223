#pragma once

#include <cstdint>
#include <span>

#include "ragg/info_structure.hpp"

namespace ragg {

enum class GaussianKind {
  kIndependentMu,        // sigma_i ~ N(mu, 1) independent, Y = sum sigma_i, prior-free
  kIndependentStandard,  // sigma_i ~ N(0, 1) independent, Y = sum sigma_i
  kFullyDependent,       // sigma_i = sigma ~ N(0, 1) for every i, Y = n sigma
};

struct GaussianFamily {
  GaussianKind kind = GaussianKind::kIndependentStandard;
  int n = 1;
  double mu = 0.0;

  static GaussianFamily independent_mu(int n, double mu);
  static GaussianFamily independent_standard(int n);
  static GaussianFamily fully_dependent(int n);

  /// E[Y].
  double prior() const { return kind == GaussianKind::kIndependentMu ? n * mu : 0.0; }
};

/// Approximation ratio of extremizing by d (averaging when d = 1):
/// 1 - (n-d)^2/n^2 for the independent families, 1 - (1-d)^2 for the
/// dependent one. The prior-free independent_mu family only supports d = 1
/// (kUnsupportedQuery otherwise).
double closed_form_ratio(const GaussianFamily& family, double d);

/// Y_i given the signal vector: sigma_i + (n-1)mu, sigma_i, or n sigma_i.
double expert_forecast(const GaussianFamily& family, std::span<const double> signals,
                       int expert);

struct MonteCarloEstimate {
  double ratio_hat = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

struct MonteCarloOptions {
  /// Samples per PRNG stream; stream k draws from Xoshiro256::stream(seed, k).
  std::uint64_t stream_size = 1 << 16;
  /// 0 means std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned workers = 0;
};

/// Monte Carlo estimate of v(X)/v(Y) for the extremized average, with a
/// delta-method standard error. Deterministic per (seed, stream_size).
MonteCarloEstimate sample_and_estimate_ratio(const GaussianFamily& family, double d,
                                             std::uint64_t n_samples, std::uint64_t seed,
                                             const MonteCarloOptions& options = {});

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Closed-form sides of the projective substitutes inequality for (A, B, i):
/// lhs = E[(Y_B - Y_{B->A})^2], rhs = the same for (A+i, B+i).
IdentitySides projective_identity_check(const GaussianFamily& family, SignalSubset a,
                                        SignalSubset b, int expert);

}  // namespace ragg
