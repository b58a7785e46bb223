#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ragg::repro {

struct Options {
  std::uint64_t mc_samples = 1'000'000;
  int property_instances = 200;
  std::uint64_t seed = 0xC0FFEE;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Key numbers on success, the first failures otherwise.
  std::string detail;
};

inline constexpr int kCriterionCount = 10;

/// Runs acceptance criterion `id` (1-based).
CriterionResult run_criterion(int id, const Options& options = {});

std::vector<CriterionResult> run_all(const Options& options = {});

/// One "[PASS] n  title  detail" line per criterion.
std::string format_table(const std::vector<CriterionResult>& results);

}  // namespace ragg::repro
