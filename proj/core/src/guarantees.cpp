#include "ragg/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "ragg/error.hpp"
#include "ragg/scalar_search.hpp"

namespace ragg {

namespace {

void require_positive_n(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidInput, "n must be >= 1, got " + std::to_string(n));
  }
}

// Largest root a of n a^2 - t a + (n-1)/4 = 0, i.e. the largest a with
// b = b_min(a) and a + b(n-1) equal to the constraint's right-hand side.
LemmaCoefficients largest_feasible_a(double n, double t) {
  double disc = t * t - n * (n - 1.0);
  if (disc < 0.0 && disc > -1e-12 * n * (n - 1.0)) disc = 0.0;
  if (disc < 0.0) {
    throw Error(ErrorCode::kNegativeDiscriminant,
                "no (a, b) satisfies the constraint: discriminant " + std::to_string(disc));
  }
  const double a = (t + std::sqrt(disc)) / (2.0 * n);
  if (!(a > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "constraint admits only a = 0");
  }
  return {a, lemma_b_min(a)};
}

constexpr double kFormulaDiscrepancyTol = 1e-6;

// d/dd of known_prior_objective, using a - b = 1 - 1/(4a).
double objective_slope(double n, double d) {
  const double t = 2.0 * n / d - 1.0;
  const double root = std::sqrt(t * t - n * (n - 1.0));
  const double a = (t + root) / (2.0 * n);
  const double da = (-2.0 * n / (d * d)) * (1.0 + t / root) / (2.0 * n);
  const double gap = 1.0 - 1.0 / (4.0 * a);
  const double dgap = da / (4.0 * a * a);
  return -(2.0 * d - 2.0) / n + (n - 1.0) / (n * n) * (dgap * d * d + 2.0 * gap * d);
}

}  // namespace

double lemma_b_min(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::kInvalidInput, "lemma coefficient a must be > 0");
  return (2.0 * a - 1.0) * (2.0 * a - 1.0) / (4.0 * a);
}

LemmaCoefficients ab_prior_free(int n) {
  require_positive_n(n);
  const double nd = n;
  const double a = (2.0 * nd - 1.0 + std::sqrt(3.0 * nd * nd - 3.0 * nd + 1.0)) / (2.0 * nd);
  return {a, lemma_b_min(a)};
}

double prior_free_bound(int n) {
  require_positive_n(n);
  const double nd = n;
  const double root = std::sqrt(3.0 * nd * nd - 3.0 * nd + 1.0);
  return 2.0 / nd - (nd - 1.0) / (2.0 * nd * (2.0 * nd - 1.0 + root)) - 1.0 / (nd * nd);
}

double prior_free_bound_from(int n, LemmaCoefficients ab) {
  require_positive_n(n);
  const double nd = n;
  return 1.0 - (nd - 1.0) / nd * (1.0 - (ab.a - ab.b) / nd);
}

double known_prior_d(int n) {
  require_positive_n(n);
  if (n == 1) return 1.0;  // denominator n^2 - n - 1 is negative; limit value
  const double nd = n;
  return nd * (std::sqrt(3.0 * nd * nd - 3.0 * nd + 1.0) - 2.0) / (nd * nd - nd - 1.0);
}

LemmaCoefficients ab_known_prior(int n, double d) {
  require_positive_n(n);
  if (!(d > 0.0 && d <= 2.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "extremization factor must be in (0, 2], got " + std::to_string(d));
  }
  const double nd = n;
  return largest_feasible_a(nd, 2.0 * nd / d - 1.0);
}

double known_prior_d_max(int n) {
  require_positive_n(n);
  const double nd = n;
  return std::min(2.0, 2.0 * nd / (1.0 + std::sqrt(nd * (nd - 1.0))));
}

double known_prior_objective(int n, double d) {
  require_positive_n(n);
  const double nd = n;
  double gain = -(d * d - 2.0 * d) / nd;
  if (n > 1) {
    const LemmaCoefficients ab = ab_known_prior(n, d);
    gain += (ab.a - ab.b) * (nd - 1.0) / (nd * nd) * d * d;
  }
  return gain;
}

KnownPriorOptimum optimize_known_prior(int n) {
  require_positive_n(n);
  const double hi = known_prior_d_max(n);
  const double lo = 1e-6;
  const ScalarOptimum best = golden_section_maximize(
      [n](double d) { return known_prior_objective(n, d); }, lo, hi, 1e-10);
  if (n == 1) return {best.argmax, best.value};
  // The peak is flat, so golden section pins d only to ~1e-8. Bisect on the
  // slope to finish.
  double left = std::max(lo, best.argmax - 1e-6);
  double right = std::min(hi, best.argmax + 1e-6);
  const double nd = n;
  if (!(right < hi && objective_slope(nd, left) > 0.0 && objective_slope(nd, right) < 0.0)) {
    return {best.argmax, best.value};
  }
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (left + right);
    if (mid <= left || mid >= right) break;
    (objective_slope(nd, mid) > 0.0 ? left : right) = mid;
  }
  const double d = 0.5 * (left + right);
  return {d, known_prior_objective(n, d)};
}

double known_prior_bound(int n) { return optimize_known_prior(n).bound; }

double known_prior_displayed_formula(int n) {
  require_positive_n(n);
  const double nd = n;
  const double q = nd * nd - nd + 1.0;
  return (std::pow(3.0 * nd * nd - 3.0 * nd + 1.0, 1.5) - 9.0 * nd * nd + 9.0 * nd + 1.0) /
         (2.0 * q * q);
}

double negative_bound_prior_free(int n) {
  require_positive_n(n);
  const double nd = n;
  return 2.0 / nd - 1.0 / (nd * nd);
}

double negative_bound_known_prior(int n) {
  require_positive_n(n);
  const double nd = n;
  return 4.0 * nd / ((nd + 1.0) * (nd + 1.0));
}

MinimaxResult minimax_d(const std::vector<std::function<double(double)>>& ratios,
                        double lo, double hi, double tol) {
  if (ratios.empty()) throw Error(ErrorCode::kInvalidInput, "minimax_d needs a ratio function");
  auto worst = [&ratios](double d) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : ratios) m = std::min(m, r(d));
    return m;
  };
  const ScalarOptimum best = ternary_search_maximize(worst, lo, hi, tol);
  return {best.argmax, best.value};
}

GuaranteeTable emit_guarantee_table(int n_max) {
  require_positive_n(n_max);
  GuaranteeTable table;
  table.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    GuaranteeRow row;
    row.n = n;
    row.prior_free_bound = prior_free_bound(n);
    const LemmaCoefficients pf = ab_prior_free(n);
    row.a_pf = pf.a;
    row.b_pf = pf.b;
    row.known_prior_d = known_prior_d(n);
    const LemmaCoefficients kp = ab_known_prior(n, row.known_prior_d);
    row.a_kp = kp.a;
    row.b_kp = kp.b;
    row.known_prior_bound = known_prior_bound(n);
    row.neg_pf = negative_bound_prior_free(n);
    row.neg_kp_conditional = negative_bound_known_prior(n);
    row.known_prior_displayed_formula = known_prior_displayed_formula(n);
    row.formula_discrepancy =
        std::abs(row.known_prior_displayed_formula - row.known_prior_bound) >
        kFormulaDiscrepancyTol;
    table.push_back(row);
  }
  return table;
}

std::string to_csv(const GuaranteeTable& table) {
  std::string out =
      "n,prior_free_bound,a_pf,b_pf,known_prior_d,a_kp,b_kp,known_prior_bound,"
      "neg_pf,neg_kp_conditional,known_prior_displayed_formula,formula_discrepancy\n";
  char buf[512];
  for (const GuaranteeRow& r : table) {
    std::snprintf(buf, sizeof buf,
                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  r.n, r.prior_free_bound, r.a_pf, r.b_pf, r.known_prior_d, r.a_kp,
                  r.b_kp, r.known_prior_bound, r.neg_pf, r.neg_kp_conditional,
                  r.known_prior_displayed_formula, r.formula_discrepancy ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace ragg
