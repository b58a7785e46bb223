#include "ragg/info_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ragg/error.hpp"

namespace ragg {

double expectation(const InfoStructure& info, const StateVariable& x) {
  info.require_aligned(x);
  const auto probs = info.probs();
  double total = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) total += probs[s] * x[s];
  return total;
}

StateVariable project_onto_partition(const InfoStructure& info,
                                     const StateVariable& x,
                                     std::span<const int> cells) {
  info.require_aligned(x);
  const auto probs = info.probs();
  const int n_cells = cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end()) + 1;
  std::vector<double> mass(static_cast<std::size_t>(n_cells), 0.0);
  std::vector<double> weighted(static_cast<std::size_t>(n_cells), 0.0);
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const auto c = static_cast<std::size_t>(cells[s]);
    mass[c] += probs[s];
    weighted[c] += probs[s] * x[s];
  }
  std::vector<double> out(probs.size());
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const auto c = static_cast<std::size_t>(cells[s]);
    out[s] = weighted[c] / mass[c];
  }
  return StateVariable(std::move(out));
}

StateVariable conditional_expectation(const InfoStructure& info, SignalSubset a) {
  return conditional_expectation(info, info.outcome(), a);
}

StateVariable conditional_expectation(const InfoStructure& info,
                                      const StateVariable& x, SignalSubset a) {
  const std::vector<int> cells = info.partition(a);
  return project_onto_partition(info, x, cells);
}

StateVariable prediction(const InfoStructure& info, SignalSubset b, SignalSubset a) {
  return conditional_expectation(info, conditional_expectation(info, b), a);
}

double mean_squared_distance(const InfoStructure& info, const StateVariable& x,
                             const StateVariable& z) {
  info.require_aligned(x);
  info.require_aligned(z);
  const auto probs = info.probs();
  double total = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const double diff = x[s] - z[s];
    total += probs[s] * diff * diff;
  }
  return total;
}

double value(const InfoStructure& info, const StateVariable& x) {
  const StateVariable& y = info.outcome();
  const StateVariable prior = StateVariable::constant(y.size(), expectation(info, y));
  return mean_squared_distance(info, y, prior) - mean_squared_distance(info, y, x);
}

double covariance(const InfoStructure& info, const StateVariable& x,
                  const StateVariable& z) {
  const double mx = expectation(info, x);
  const double mz = expectation(info, z);
  const auto probs = info.probs();
  double total = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    total += probs[s] * (x[s] - mx) * (z[s] - mz);
  }
  return total;
}

double variance(const InfoStructure& info, const StateVariable& x) {
  return covariance(info, x, x);
}

bool is_measurable(const InfoStructure& info, const StateVariable& x,
                   SignalSubset a) {
  info.require_aligned(x);
  const std::vector<int> cells = info.partition(a);
  std::vector<double> seen;
  std::vector<bool> has;
  for (std::size_t s = 0; s < cells.size(); ++s) {
    const auto c = static_cast<std::size_t>(cells[s]);
    if (c >= seen.size()) {
      seen.resize(c + 1);
      has.resize(c + 1, false);
    }
    if (!has[c]) {
      seen[c] = x[s];
      has[c] = true;
    } else if (std::abs(seen[c] - x[s]) > 1e-12 * std::max(1.0, std::abs(x[s]))) {
      return false;
    }
  }
  return true;
}

double approximation_ratio(const InfoStructure& info, const StateVariable& z,
                           double consistency_tol) {
  info.require_aligned(z);
  const SignalSubset everyone = info.all_experts();
  const StateVariable full = conditional_expectation(info, everyone);
  const double benchmark = value(info, full);
  if (benchmark <= kDegenerateThreshold) {
    throw Error(ErrorCode::kDegenerateStructure,
                "v(Y_[n]) = " + std::to_string(benchmark) +
                    ": outcome is constant given all signals, ratio undefined");
  }
  const double ratio = value(info, z) / benchmark;

  if (is_measurable(info, z, everyone)) {
    const StateVariable prior =
        StateVariable::constant(z.size(), expectation(info, info.outcome()));
    const double rewritten = 1.0 - mean_squared_distance(info, full, z) /
                                       mean_squared_distance(info, full, prior);
    if (std::abs(rewritten - ratio) > consistency_tol * std::max(1.0, std::abs(ratio))) {
      throw Error(ErrorCode::kInternalConsistency,
                  "approximation ratio forms disagree: " + std::to_string(ratio) +
                      " vs " + std::to_string(rewritten));
    }
  }
  return ratio;
}

AffineProjection affine_projection(const InfoStructure& info,
                                   const StateVariable& target,
                                   const StateVariable& basis) {
  info.require_aligned(target);
  info.require_aligned(basis);
  const double target_mean = expectation(info, target);
  const double basis_var = variance(info, basis);
  if (basis_var <= kDegenerateThreshold) {
    return {StateVariable::constant(target.size(), target_mean), 0.0, true};
  }
  const double slope = covariance(info, target, basis) / basis_var;
  const double basis_mean = expectation(info, basis);
  std::vector<double> out(target.size());
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = target_mean + slope * (basis[s] - basis_mean);
  }
  return {StateVariable(std::move(out)), slope, false};
}

}  // namespace ragg
