#include "prediction_table.hpp"

#include <string>

#include "ragg/error.hpp"

namespace ragg::detail {

void require_enumerable(const InfoStructure& info, int cap) {
  if (info.n_experts() > cap) {
    throw Error(ErrorCode::kEnumerationCap,
                "n = " + std::to_string(info.n_experts()) +
                    " exceeds the enumeration cap of " + std::to_string(cap));
  }
}

PredictionTable::PredictionTable(const InfoStructure& info)
    : info_(&info), n_subsets_(std::size_t{1} << info.n_experts()) {
  partitions_.reserve(n_subsets_);
  beliefs_.reserve(n_subsets_);
  values_.reserve(n_subsets_);
  for (std::size_t m = 0; m < n_subsets_; ++m) {
    partitions_.push_back(info.partition(SignalSubset::from_mask(m)));
    beliefs_.push_back(project_onto_partition(info, info.outcome(), partitions_.back()));
    values_.push_back(value(info, beliefs_.back()));
  }
}

double PredictionTable::prediction_error(SignalSubset a, SignalSubset b) const {
  if (errors_.empty()) fill_prediction_errors();
  return errors_[static_cast<std::size_t>(a.mask()) * n_subsets_ +
                 static_cast<std::size_t>(b.mask())];
}

void PredictionTable::fill_prediction_errors() const {
  errors_.resize(n_subsets_ * n_subsets_);
  for (std::size_t a = 0; a < n_subsets_; ++a) {
    for (std::size_t b = 0; b < n_subsets_; ++b) {
      const StateVariable predicted =
          project_onto_partition(*info_, beliefs_[b], partitions_[a]);
      errors_[a * n_subsets_ + b] =
          mean_squared_distance(*info_, beliefs_[b], predicted);
    }
  }
}

}  // namespace ragg::detail
