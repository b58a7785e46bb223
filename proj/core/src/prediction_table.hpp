#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ragg/info_core.hpp"
#include "ragg/info_structure.hpp"

namespace ragg::detail {

void require_enumerable(const InfoStructure& info, int cap);

/// Beliefs Y_B for every B, and on demand the prediction errors
/// E[(Y_B - Y_{B->A})^2] for every (A, B), both indexed by bitmask.
class PredictionTable {
 public:
  explicit PredictionTable(const InfoStructure& info);

  const StateVariable& belief(SignalSubset b) const {
    return beliefs_[static_cast<std::size_t>(b.mask())];
  }
  /// v(Y_B).
  double belief_value(SignalSubset b) const {
    return values_[static_cast<std::size_t>(b.mask())];
  }
  /// E[(Y_B - Y_{B->A})^2]. Computed for all pairs on first use.
  double prediction_error(SignalSubset a, SignalSubset b) const;

 private:
  void fill_prediction_errors() const;

  const InfoStructure* info_;
  std::size_t n_subsets_;
  std::vector<std::vector<int>> partitions_;
  std::vector<StateVariable> beliefs_;
  std::vector<double> values_;
  mutable std::vector<double> errors_;
};

}  // namespace ragg::detail
