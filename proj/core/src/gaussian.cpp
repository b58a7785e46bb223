#include "ragg/gaussian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "ragg/aggregators.hpp"
#include "ragg/error.hpp"
#include "ragg/rng.hpp"

namespace ragg {

namespace {

void require_family(const GaussianFamily& f) {
  if (f.n < 1 || f.n > SignalSubset::kMaxExperts) {
    throw Error(ErrorCode::kInvalidInput, "gaussian family needs 1 <= n <= 64");
  }
  if (!std::isfinite(f.mu)) throw Error(ErrorCode::kInvalidInput, "mu must be finite");
}

void require_supported_d(const GaussianFamily& f, double d) {
  if (!std::isfinite(d)) throw Error(ErrorCode::kInvalidInput, "d must be finite");
  if (f.kind == GaussianKind::kIndependentMu && d != 1.0) {
    throw Error(ErrorCode::kUnsupportedQuery,
                "independent_mu is prior-free; only d = 1 (averaging) is defined");
  }
}

void draw_signals(const GaussianFamily& f, Xoshiro256& gen, std::vector<double>& out) {
  if (f.kind == GaussianKind::kFullyDependent) {
    std::fill(out.begin(), out.end(), gen.normal());
    return;
  }
  for (double& s : out) s = f.mu + gen.normal();
}

struct StreamSums {
  double err = 0.0;       // sum (Y - X)^2
  double spread = 0.0;    // sum (Y - E[Y])^2
  double residual = 0.0;  // sum ((Y - X)^2 - R (Y - E[Y])^2)^2, second pass
};

// Runs `body(stream_index)` over all streams on `workers` threads.
template <typename Body>
void for_each_stream(std::uint64_t n_streams, unsigned workers, Body body) {
  if (workers <= 1 || n_streams <= 1) {
    for (std::uint64_t k = 0; k < n_streams; ++k) body(k);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_streams));
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t k = next++; k < n_streams; k = next++) body(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

GaussianFamily GaussianFamily::independent_mu(int n, double mu) {
  return {GaussianKind::kIndependentMu, n, mu};
}
GaussianFamily GaussianFamily::independent_standard(int n) {
  return {GaussianKind::kIndependentStandard, n, 0.0};
}
GaussianFamily GaussianFamily::fully_dependent(int n) {
  return {GaussianKind::kFullyDependent, n, 0.0};
}

double closed_form_ratio(const GaussianFamily& family, double d) {
  require_family(family);
  require_supported_d(family, d);
  const double n = family.n;
  switch (family.kind) {
    case GaussianKind::kIndependentMu:
    case GaussianKind::kIndependentStandard:
      return 1.0 - (n - d) * (n - d) / (n * n);
    case GaussianKind::kFullyDependent:
      return 1.0 - (1.0 - d) * (1.0 - d);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown gaussian family");
}

double expert_forecast(const GaussianFamily& family, std::span<const double> signals,
                       int expert) {
  require_family(family);
  if (signals.size() != static_cast<std::size_t>(family.n)) {
    throw Error(ErrorCode::kInvalidInput, "expected " + std::to_string(family.n) + " signals");
  }
  if (expert < 0 || expert >= family.n) {
    throw Error(ErrorCode::kInvalidInput, "expert index out of range");
  }
  const double sigma = signals[static_cast<std::size_t>(expert)];
  switch (family.kind) {
    case GaussianKind::kIndependentMu: return sigma + (family.n - 1) * family.mu;
    case GaussianKind::kIndependentStandard: return sigma;
    case GaussianKind::kFullyDependent: return family.n * sigma;
  }
  throw Error(ErrorCode::kInvalidInput, "unknown gaussian family");
}

MonteCarloEstimate sample_and_estimate_ratio(const GaussianFamily& family, double d,
                                             std::uint64_t n_samples, std::uint64_t seed,
                                             const MonteCarloOptions& options) {
  require_family(family);
  require_supported_d(family, d);
  if (n_samples < 1) throw Error(ErrorCode::kInvalidInput, "n_samples must be >= 1");
  if (options.stream_size < 1) throw Error(ErrorCode::kInvalidInput, "stream_size must be >= 1");

  const std::uint64_t n_streams = (n_samples + options.stream_size - 1) / options.stream_size;
  const unsigned workers =
      options.workers != 0 ? options.workers : std::max(1U, std::thread::hardware_concurrency());
  const double prior = family.prior();
  std::vector<StreamSums> sums(n_streams);

  // Each pass regenerates every stream from scratch, so pass two sees the
  // same draws as pass one.
  auto run_pass = [&](bool second_pass, double ratio_of_sums) {
    for_each_stream(n_streams, workers, [&](std::uint64_t k) {
      Xoshiro256 gen = Xoshiro256::stream(seed, k);
      const std::uint64_t begin = k * options.stream_size;
      const std::uint64_t end = std::min(n_samples, begin + options.stream_size);
      std::vector<double> signals(static_cast<std::size_t>(family.n));
      std::vector<double> forecasts(signals.size());
      StreamSums& acc = sums[k];
      for (std::uint64_t s = begin; s < end; ++s) {
        draw_signals(family, gen, signals);
        double y = 0.0;
        for (double sig : signals) y += sig;
        for (int i = 0; i < family.n; ++i) {
          forecasts[static_cast<std::size_t>(i)] = expert_forecast(family, signals, i);
        }
        const double x = extremize_value(forecasts, prior, d);
        const double err = (y - x) * (y - x);
        const double spread = (y - prior) * (y - prior);
        if (second_pass) {
          const double g = err - ratio_of_sums * spread;
          acc.residual += g * g;
        } else {
          acc.err += err;
          acc.spread += spread;
        }
      }
    });
  };

  run_pass(false, 0.0);
  double err = 0.0;
  double spread = 0.0;
  for (const StreamSums& s : sums) {
    err += s.err;
    spread += s.spread;
  }
  if (!(spread > 0.0)) {
    throw Error(ErrorCode::kDegenerateStructure, "sampled outcome has zero spread");
  }
  const double ratio_of_sums = err / spread;
  run_pass(true, ratio_of_sums);
  double residual = 0.0;
  for (const StreamSums& s : sums) residual += s.residual;

  const double count = static_cast<double>(n_samples);
  const double mean_spread = spread / count;
  double stderr_ = 0.0;
  if (n_samples > 1) {
    const double var_g = residual / (count - 1.0);
    stderr_ = std::sqrt(var_g / count) / mean_spread;
  }
  return {1.0 - ratio_of_sums, stderr_, n_samples};
}

IdentitySides projective_identity_check(const GaussianFamily& family, SignalSubset a,
                                        SignalSubset b, int expert) {
  require_family(family);
  const SignalSubset everyone = SignalSubset::all(family.n);
  if (!(a | b).is_subset_of(everyone) || expert < 0 || expert >= family.n) {
    throw Error(ErrorCode::kInvalidInput, "subset or expert out of range");
  }
  const SignalSubset a2 = a.with(expert);
  const SignalSubset b2 = b.with(expert);
  switch (family.kind) {
    case GaussianKind::kIndependentMu:
    case GaussianKind::kIndependentStandard:
      // Y_B - Y_{B->A} = sum of the unit-variance signals in B \ A.
      return {static_cast<double>((b - a).size()), static_cast<double>((b2 - a2).size())};
    case GaussianKind::kFullyDependent: {
      // Any nonempty A knows sigma, hence Y_B; Y_B = n sigma for nonempty B.
      auto gap = [&](SignalSubset from, SignalSubset to) {
        return (from.empty() && !to.empty()) ? static_cast<double>(family.n) * family.n : 0.0;
      };
      return {gap(a, b), gap(a2, b2)};
    }
  }
  throw Error(ErrorCode::kInvalidInput, "unknown gaussian family");
}

}  // namespace ragg
