#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ragg/info_core.hpp"
#include "ragg/info_structure.hpp"

namespace ragg {

enum class Condition {
  kWeak,                  // v(Y_{A+i}) - v(Y_A) >= v(Y_{B+i}) - v(Y_B), A subset of B
  kProjective,            // E[(Y_B - Y_{B->A})^2] >= E[(Y_{B+i} - Y_{B+i->A+i})^2]
  kProjectiveRestricted,  // same, only for i in A
};

std::string_view to_string(Condition condition);

struct Witness {
  SignalSubset a;
  SignalSubset b;
  int expert = 0;
  double lhs = 0.0;
  double rhs = 0.0;

  double margin() const { return lhs - rhs; }
};

struct SubstitutesReport {
  Condition condition = Condition::kWeak;
  double tolerance = kDefaultTolerance;
  bool satisfied = true;
  /// Minimum of lhs - rhs over all checked triples.
  double worst_margin = 0.0;
  /// Violations sorted by margin (ascending, enumeration order on ties),
  /// capped; when satisfied, the single worst triple.
  std::vector<Witness> witnesses;
  std::size_t triples_checked = 0;
  std::size_t violation_count = 0;
};

struct CheckOptions {
  /// A triple violates only when lhs - rhs < -tol.
  double tol = kDefaultTolerance;
  int enumeration_cap = 12;
  std::size_t witness_cap = 100;
};

SubstitutesReport check_weak(const InfoStructure& info, const CheckOptions& options = {});
SubstitutesReport check_projective(const InfoStructure& info,
                                   const CheckOptions& options = {});
SubstitutesReport check_projective_restricted(const InfoStructure& info,
                                              const CheckOptions& options = {});
SubstitutesReport check(const InfoStructure& info, Condition condition,
                        const CheckOptions& options = {});

/// Recomputes a witness's two sides from scratch through info_core.
Witness recompute_witness(const InfoStructure& info, Condition condition,
                          SignalSubset a, SignalSubset b, int expert);

}  // namespace ragg
