#pragma once

#include <cstddef>
#include <vector>

#include "ragg/info_core.hpp"
#include "ragg/info_structure.hpp"

namespace ragg {

/// One (expert, team, revealers) configuration of the elicitation mechanism.
/// Losses are the team's expected squared error in predicting the
/// elicitor's belief.
struct RevelationWitness {
  int expert = 0;
  SignalSubset team;
  SignalSubset revealers;
  double loss_reveal = 0.0;    // E[(Y_{B+i} - Y_{B+i->A})^2]
  double loss_withhold = 0.0;  // E[(Y_B - Y_{B->A})^2]
};

struct RevelationReport {
  double tolerance = kDefaultTolerance;
  bool dominant = true;
  /// Configurations where revealing costs more than tol, worst first, capped.
  std::vector<RevelationWitness> witnesses;
  std::size_t configurations_checked = 0;
  std::size_t violation_count = 0;
};

struct RevelationOptions {
  double tol = kDefaultTolerance;
  int enumeration_cap = 12;
  std::size_t witness_cap = 100;
};

/// Enumerates every expert i, team A containing i, and revealer set B not
/// containing i; revealing is dominant iff loss_reveal <= loss_withhold + tol
/// everywhere.
RevelationReport check_revelation_dominance(const InfoStructure& info,
                                            const RevelationOptions& options = {});

}  // namespace ragg
