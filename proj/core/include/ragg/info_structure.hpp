#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ragg {

/// Set of expert indices, stored as a bitmask. Experts are 0-based in the
/// API; reports print them 1-based.
class SignalSubset {
 public:
  static constexpr int kMaxExperts = 64;

  constexpr SignalSubset() = default;

  static SignalSubset from_mask(std::uint64_t mask) { return SignalSubset(mask); }
  static SignalSubset of(std::initializer_list<int> experts);
  static SignalSubset all(int n);
  static SignalSubset single(int expert);

  std::uint64_t mask() const noexcept { return mask_; }
  bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept;
  bool contains(int expert) const noexcept;
  bool is_subset_of(SignalSubset other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  /// Largest member index, or -1 when empty.
  int max_member() const noexcept;
  std::vector<int> members() const;

  SignalSubset with(int expert) const { return *this | single(expert); }
  SignalSubset without(int expert) const {
    return from_mask(mask_ & ~single(expert).mask_);
  }

  friend SignalSubset operator|(SignalSubset a, SignalSubset b) {
    return SignalSubset(a.mask_ | b.mask_);
  }
  friend SignalSubset operator&(SignalSubset a, SignalSubset b) {
    return SignalSubset(a.mask_ & b.mask_);
  }
  friend SignalSubset operator-(SignalSubset a, SignalSubset b) {
    return SignalSubset(a.mask_ & ~b.mask_);
  }
  friend bool operator==(SignalSubset, SignalSubset) = default;

 private:
  explicit constexpr SignalSubset(std::uint64_t mask) : mask_(mask) {}
  std::uint64_t mask_ = 0;
};

/// "{1,3}" with 1-based indices; "{}" for the empty set.
std::string to_string(SignalSubset subset);

/// All subsets of {0..n-1}, ordered by cardinality and then
/// lexicographically by sorted member list.
std::vector<SignalSubset> enumerate_subsets(int n);

/// A real value per world state, aligned with InfoStructure::states().
class StateVariable {
 public:
  StateVariable() = default;
  explicit StateVariable(std::vector<double> values);

  static StateVariable constant(std::size_t size, double value);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t s) const { return values_[s]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const StateVariable&, const StateVariable&) = default;

 private:
  std::vector<double> values_;
};

struct State {
  double prob = 0.0;
  std::vector<std::string> signals;
  double y = 0.0;
};

struct ValidationOptions {
  /// Accept probability sums within 1e-6 of one and rescale them.
  bool renormalize = false;
};

/// Finite information structure: weighted states, one opaque signal label
/// per expert per state, and the outcome Y at each state. Immutable.
class InfoStructure {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-6;

  InfoStructure(int n_experts, std::vector<State> states,
                ValidationOptions options = {});

  int n_experts() const noexcept { return n_experts_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  const std::vector<State>& states() const noexcept { return states_; }
  std::span<const double> probs() const noexcept { return probs_; }
  const StateVariable& outcome() const noexcept { return outcome_; }
  SignalSubset all_experts() const { return SignalSubset::all(n_experts_); }

  /// Interned label id of `expert`'s signal at `state`, numbered by first
  /// appearance in state order.
  int signal_id(int expert, std::size_t state) const {
    return signal_ids_[static_cast<std::size_t>(expert)][state];
  }
  int alphabet_size(int expert) const {
    return alphabet_sizes_[static_cast<std::size_t>(expert)];
  }

  /// Cell index per state for the partition induced by the signals in
  /// `subset`. Cells are numbered 0.. in order of first appearance.
  std::vector<int> partition(SignalSubset subset) const;
  /// Throws kInvalidInput when `subset` names an expert >= n_experts().
  void require_valid(SignalSubset subset) const;
  /// Throws kInvalidInput when `x` is not aligned with the states.
  void require_aligned(const StateVariable& x) const;

 private:
  int n_experts_;
  std::vector<State> states_;
  std::vector<double> probs_;
  StateVariable outcome_;
  std::vector<std::vector<int>> signal_ids_;
  std::vector<int> alphabet_sizes_;
};

}  // namespace ragg
