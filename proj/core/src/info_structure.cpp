#include "ragg/info_structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string_view>
#include <unordered_map>

#include "ragg/error.hpp"

namespace ragg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDegenerateStructure: return "DegenerateStructure";
    case ErrorCode::kEnumerationCap: return "EnumerationCap";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kAttemptsExhausted: return "AttemptsExhausted";
    case ErrorCode::kUncoveredForecastTuple: return "UncoveredForecastTuple";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kNegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::kUnsupportedQuery: return "UnsupportedQuery";
    case ErrorCode::kInternalConsistency: return "InternalConsistency";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// SignalSubset

namespace {

void check_expert_index(int expert) {
  if (expert < 0 || expert >= SignalSubset::kMaxExperts) {
    throw Error(ErrorCode::kInvalidInput,
                "expert index " + std::to_string(expert) + " out of range");
  }
}

}  // namespace

SignalSubset SignalSubset::of(std::initializer_list<int> experts) {
  SignalSubset out;
  for (int e : experts) out = out.with(e);
  return out;
}

SignalSubset SignalSubset::all(int n) {
  if (n < 0 || n > kMaxExperts) {
    throw Error(ErrorCode::kInvalidInput,
                "expert count " + std::to_string(n) + " out of range");
  }
  return SignalSubset(n == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1);
}

SignalSubset SignalSubset::single(int expert) {
  check_expert_index(expert);
  return SignalSubset(std::uint64_t{1} << expert);
}

int SignalSubset::size() const noexcept { return std::popcount(mask_); }

bool SignalSubset::contains(int expert) const noexcept {
  return expert >= 0 && expert < kMaxExperts && ((mask_ >> expert) & 1U) != 0;
}

int SignalSubset::max_member() const noexcept {
  return mask_ == 0 ? -1 : 63 - std::countl_zero(mask_);
}

std::vector<int> SignalSubset::members() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

std::string to_string(SignalSubset subset) {
  std::string out = "{";
  bool first = true;
  for (int e : subset.members()) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

std::vector<SignalSubset> enumerate_subsets(int n) {
  if (n < 0 || n > 30) {
    throw Error(ErrorCode::kEnumerationCap,
                "cannot enumerate subsets of " + std::to_string(n) + " experts");
  }
  std::vector<SignalSubset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    out.push_back(SignalSubset::from_mask(m));
  }
  std::stable_sort(out.begin(), out.end(), [](SignalSubset a, SignalSubset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members() < b.members();
  });
  return out;
}

// ---------------------------------------------------------------------------
// StateVariable

StateVariable::StateVariable(std::vector<double> values)
    : values_(std::move(values)) {
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (!std::isfinite(values_[s])) {
      throw Error(ErrorCode::kInvalidInput,
                  "state variable value at state " + std::to_string(s) +
                      " is not finite");
    }
  }
}

StateVariable StateVariable::constant(std::size_t size, double value) {
  return StateVariable(std::vector<double>(size, value));
}

// ---------------------------------------------------------------------------
// InfoStructure

InfoStructure::InfoStructure(int n_experts, std::vector<State> states,
                             ValidationOptions options)
    : n_experts_(n_experts), states_(std::move(states)) {
  if (n_experts_ < 1 || n_experts_ > SignalSubset::kMaxExperts) {
    throw Error(ErrorCode::kInvalidInput,
                "n: expert count must be in [1, 64], got " +
                    std::to_string(n_experts_));
  }
  if (states_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "states: at least one state required");
  }

  double total = 0.0;
  for (std::size_t s = 0; s < states_.size(); ++s) {
    const State& st = states_[s];
    const std::string where = "states[" + std::to_string(s) + "]";
    if (!std::isfinite(st.prob) || st.prob <= 0.0 || st.prob > 1.0) {
      throw Error(ErrorCode::kInvalidInput,
                  where + ".prob: must be in (0, 1], got " + std::to_string(st.prob));
    }
    if (!std::isfinite(st.y)) {
      throw Error(ErrorCode::kInvalidInput, where + ".y: must be finite");
    }
    if (st.signals.size() != static_cast<std::size_t>(n_experts_)) {
      throw Error(ErrorCode::kInvalidInput,
                  where + ".signals: expected " + std::to_string(n_experts_) +
                      " labels, got " + std::to_string(st.signals.size()));
    }
    total += st.prob;
  }

  const double gap = std::abs(total - 1.0);
  if (gap > kSumTolerance) {
    if (!options.renormalize || gap > kRenormalizeTolerance) {
      throw Error(ErrorCode::kInvalidInput,
                  "states: probabilities sum to " + std::to_string(total) +
                      ", not 1");
    }
    for (State& st : states_) st.prob /= total;
  }

  probs_.reserve(states_.size());
  std::vector<double> ys;
  ys.reserve(states_.size());
  for (const State& st : states_) {
    probs_.push_back(st.prob);
    ys.push_back(st.y);
  }
  outcome_ = StateVariable(std::move(ys));

  signal_ids_.assign(static_cast<std::size_t>(n_experts_),
                     std::vector<int>(states_.size()));
  alphabet_sizes_.assign(static_cast<std::size_t>(n_experts_), 0);
  for (int e = 0; e < n_experts_; ++e) {
    std::unordered_map<std::string_view, int> ids;
    for (std::size_t s = 0; s < states_.size(); ++s) {
      const std::string& label = states_[s].signals[static_cast<std::size_t>(e)];
      auto [it, inserted] = ids.try_emplace(label, static_cast<int>(ids.size()));
      signal_ids_[static_cast<std::size_t>(e)][s] = it->second;
    }
    alphabet_sizes_[static_cast<std::size_t>(e)] = static_cast<int>(ids.size());
  }
}

void InfoStructure::require_valid(SignalSubset subset) const {
  if (subset.max_member() >= n_experts_) {
    throw Error(ErrorCode::kInvalidInput,
                "subset " + to_string(subset) + " names an expert beyond n = " +
                    std::to_string(n_experts_));
  }
}

void InfoStructure::require_aligned(const StateVariable& x) const {
  if (x.size() != states_.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "state variable has " + std::to_string(x.size()) +
                    " values for " + std::to_string(states_.size()) + " states");
  }
}

std::vector<int> InfoStructure::partition(SignalSubset subset) const {
  require_valid(subset);
  std::vector<int> cells(states_.size(), 0);
  for (int e : subset.members()) {
    const auto& ids = signal_ids_[static_cast<std::size_t>(e)];
    std::unordered_map<std::uint64_t, int> refined;
    for (std::size_t s = 0; s < states_.size(); ++s) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(cells[s]) << 32) |
          static_cast<std::uint32_t>(ids[s]);
      auto [it, inserted] = refined.try_emplace(key, static_cast<int>(refined.size()));
      cells[s] = it->second;
    }
  }
  return cells;
}

}  // namespace ragg
