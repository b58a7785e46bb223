#include "ragg/aggregators.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "ragg/error.hpp"
#include "ragg/info_core.hpp"

namespace ragg {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double mean_of(std::span<const double> xs) {
  if (xs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "forecast vector is empty");
  }
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

Strategy Strategy::extremize(double d) {
  if (!std::isfinite(d)) {
    throw Error(ErrorCode::kInvalidInput, "extremization factor must be finite");
  }
  return Strategy(strategy::Extremize{d}, true);
}

Strategy Strategy::tabular(strategy::Tabular table, bool uses_prior) {
  return Strategy(std::move(table), uses_prior);
}

std::string Strategy::name() const {
  return std::visit(
      Overloaded{
          [](const strategy::Average&) -> std::string { return "average"; },
          [](const strategy::Extremize& e) -> std::string {
            char buf[64];
            std::snprintf(buf, sizeof buf, "extremize:%.17g", e.d);
            return buf;
          },
          [](const strategy::RandomExpert&) -> std::string { return "random-expert"; },
          [](const strategy::PriorOnly&) -> std::string { return "prior"; },
          [](const strategy::Tabular&) -> std::string { return "tabular"; },
      },
      kind_);
}

double Strategy::evaluate(std::span<const double> forecasts, double prior) const {
  return std::visit(
      Overloaded{
          [&](const strategy::Average&) { return mean_of(forecasts); },
          [&](const strategy::Extremize& e) {
            return extremize_value(forecasts, prior, e.d);
          },
          [&](const strategy::RandomExpert&) -> double {
            throw Error(ErrorCode::kKindMismatch,
                        "random-expert has no statewise output; use "
                        "random_expert_value()");
          },
          [&](const strategy::PriorOnly&) { return prior; },
          [&](const strategy::Tabular& t) {
            const std::string key = forecast_key(forecasts);
            if (auto it = t.table.find(key); it != t.table.end()) return it->second;
            if (t.default_output) return *t.default_output;
            throw Error(ErrorCode::kUncoveredForecastTuple,
                        "no tabular entry for forecasts (" + key + ")");
          },
      },
      kind_);
}

std::string forecast_key(std::span<const double> forecasts) {
  std::string key;
  char buf[64];
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12f", forecasts[i]);
    std::string_view part = buf;
    // "-0.000000000000" and "0.000000000000" name the same forecast
    if (part.front() == '-' && part.find_first_not_of("-0.") == std::string_view::npos) {
      part.remove_prefix(1);
    }
    if (i > 0) key += ',';
    key += part;
  }
  return key;
}

double extremize_value(std::span<const double> forecasts, double prior, double d) {
  const double mean = mean_of(forecasts);
  return mean + (d - 1.0) * (mean - prior);
}

std::vector<std::vector<double>> forecast_vectors(const InfoStructure& info) {
  const int n = info.n_experts();
  std::vector<std::vector<double>> out(info.num_states(),
                                       std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    const StateVariable yi = conditional_expectation(info, SignalSubset::single(i));
    for (std::size_t s = 0; s < info.num_states(); ++s) {
      out[s][static_cast<std::size_t>(i)] = yi[s];
    }
  }
  return out;
}

StateVariable apply(const InfoStructure& info, const Strategy& s) {
  if (std::holds_alternative<strategy::RandomExpert>(s.kind())) {
    throw Error(ErrorCode::kKindMismatch,
                "random-expert has no statewise output; use random_expert_value()");
  }
  const double prior = expectation(info, info.outcome());
  const auto forecasts = forecast_vectors(info);
  std::vector<double> out;
  out.reserve(forecasts.size());
  for (const auto& f : forecasts) out.push_back(s.evaluate(f, prior));
  return StateVariable(std::move(out));
}

double random_expert_value(const InfoStructure& info) {
  double total = 0.0;
  for (int i = 0; i < info.n_experts(); ++i) {
    total += value(info, conditional_expectation(info, SignalSubset::single(i)));
  }
  return total / info.n_experts();
}

Strategy optimal_tabular_aggregator(Setting setting) {
  const double agree = setting == Setting::kPriorFree
                           ? 1.0
                           : 1.0 / (2.0 * (2.0 + std::sqrt(7.0)) / 12.0);
  strategy::Tabular t;
  const double up[] = {1.0, 1.0};
  const double down[] = {-1.0, -1.0};
  const double mixed1[] = {1.0, -1.0};
  const double mixed2[] = {-1.0, 1.0};
  t.table[forecast_key(up)] = agree;
  t.table[forecast_key(down)] = -agree;
  t.table[forecast_key(mixed1)] = 0.0;
  t.table[forecast_key(mixed2)] = 0.0;
  return Strategy::tabular(std::move(t), setting == Setting::kKnownPrior);
}

}  // namespace ragg
