#pragma once

#include <span>
#include <vector>

#include "ragg/info_structure.hpp"

namespace ragg {

inline constexpr double kDefaultTolerance = 1e-9;
/// Variances at or below this are treated as zero.
inline constexpr double kDegenerateThreshold = 1e-12;

double expectation(const InfoStructure& info, const StateVariable& x);

/// E[X | cell] statewise, for an arbitrary partition of the states.
StateVariable project_onto_partition(const InfoStructure& info,
                                     const StateVariable& x,
                                     std::span<const int> cells);

/// Y_A: E[Y | signals of A], constant on each cell of the A-partition.
StateVariable conditional_expectation(const InfoStructure& info, SignalSubset a);

/// E[X | signals of A] for an arbitrary state variable X.
StateVariable conditional_expectation(const InfoStructure& info,
                                      const StateVariable& x, SignalSubset a);

/// Y_{B->A}: A's prediction of B's belief, E[Y_B | signals of A].
StateVariable prediction(const InfoStructure& info, SignalSubset b, SignalSubset a);

/// E[(X - Z)^2].
double mean_squared_distance(const InfoStructure& info, const StateVariable& x,
                             const StateVariable& z);

/// v(X) = E[(Y - E[Y])^2] - E[(Y - X)^2].
double value(const InfoStructure& info, const StateVariable& x);

double variance(const InfoStructure& info, const StateVariable& x);
double covariance(const InfoStructure& info, const StateVariable& x,
                  const StateVariable& z);

/// True when `x` is constant on every cell of the A-partition.
bool is_measurable(const InfoStructure& info, const StateVariable& x,
                   SignalSubset a);

/// v(Z) / v(Y_[n]).
///
/// Throws kDegenerateStructure when v(Y_[n]) <= 1e-12. When Z is a function
/// of the signals, the ratio is recomputed as
/// 1 - E[(Y_[n] - Z)^2] / E[(Y_[n] - E[Y])^2] and the two must agree within
/// `consistency_tol`, else kInternalConsistency.
double approximation_ratio(const InfoStructure& info, const StateVariable& z,
                           double consistency_tol = kDefaultTolerance);

struct AffineProjection {
  StateVariable projection;
  double slope = 0.0;
  /// Var(basis) <= 1e-12; projection falls back to the constant E[target].
  bool degenerate_basis = false;
};

/// Projection of `target` onto {E[target] + beta (basis - E[basis])}.
AffineProjection affine_projection(const InfoStructure& info,
                                   const StateVariable& target,
                                   const StateVariable& basis);

}  // namespace ragg
