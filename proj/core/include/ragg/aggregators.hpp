#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ragg/info_structure.hpp"

namespace ragg {

enum class Setting { kPriorFree, kKnownPrior };

namespace strategy {

struct Average {};
/// Mean pushed away from the prior by factor d.
struct Extremize {
  double d = 1.0;
};
/// Reports a uniformly random expert's forecast; only its expected value is
/// defined, see random_expert_value().
struct RandomExpert {};
struct PriorOnly {};
/// Lookup keyed by the forecast tuple rounded to 12 decimals.
struct Tabular {
  std::map<std::string, double> table;
  std::optional<double> default_output;
};

}  // namespace strategy

class Strategy {
 public:
  using Kind = std::variant<strategy::Average, strategy::Extremize,
                            strategy::RandomExpert, strategy::PriorOnly,
                            strategy::Tabular>;

  static Strategy average() { return Strategy(strategy::Average{}); }
  static Strategy extremize(double d);
  static Strategy random_expert() { return Strategy(strategy::RandomExpert{}); }
  static Strategy prior_only() { return Strategy(strategy::PriorOnly{}); }
  static Strategy tabular(strategy::Tabular table, bool uses_prior = false);

  const Kind& kind() const noexcept { return kind_; }
  bool uses_prior() const noexcept { return uses_prior_; }
  std::string name() const;

  /// Output for one forecast vector. Throws kKindMismatch for RandomExpert
  /// and kUncoveredForecastTuple for a tabular miss with no default.
  double evaluate(std::span<const double> forecasts, double prior) const;

 private:
  Strategy(Kind kind, bool uses_prior = false)
      : kind_(std::move(kind)), uses_prior_(uses_prior) {}

  Kind kind_;
  bool uses_prior_;
};

/// Canonical tabular key: each forecast printed with 12 decimals, joined by
/// ','. Negative zero prints as zero.
std::string forecast_key(std::span<const double> forecasts);

/// X = mean + (d - 1)(mean - prior).
double extremize_value(std::span<const double> forecasts, double prior, double d);

/// Per-state forecast vectors (Y_1 .. Y_n).
std::vector<std::vector<double>> forecast_vectors(const InfoStructure& info);

/// Applies the strategy statewise to the experts' forecasts and E[Y].
StateVariable apply(const InfoStructure& info, const Strategy& s);

/// Expected v of the random-expert strategy: (1/n) sum_i v(Y_i).
double random_expert_value(const InfoStructure& info);

/// Minimax aggregator for the two-expert tight structures: +-1 (prior-free)
/// or +-1/(2p) with p = (2 + sqrt 7)/12 (known prior) on agreeing forecasts,
/// 0 on mixed ones.
Strategy optimal_tabular_aggregator(Setting setting);

}  // namespace ragg
