#include "ragg/scalar_search.hpp"

#include <cmath>

#include "ragg/error.hpp"

namespace ragg {

namespace {

void require_bracket(double lo, double hi, double tol) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "invalid search bracket");
  }
}

}  // namespace

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol) {
  require_bracket(lo, hi, tol);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

ScalarOptimum ternary_search_maximize(const std::function<double(double)>& f,
                                      double lo, double hi, double tol) {
  require_bracket(lo, hi, tol);
  while (hi - lo > tol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) >= f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

}  // namespace ragg
