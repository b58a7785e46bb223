#pragma once

#include <functional>

namespace ragg {

struct ScalarOptimum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Stops when the bracket is narrower than `tol`.
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol = 1e-10);

/// Ternary search for the maximum of a concave function on [lo, hi]. On
/// ties the left point wins, so flat tops resolve to the smallest argument.
ScalarOptimum ternary_search_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol = 1e-10);

}  // namespace ragg
