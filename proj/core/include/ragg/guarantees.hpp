#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ragg {

/// Lemma coefficients: any a, b >= 0 with b >= (2a - 1)^2 / (4a).
struct LemmaCoefficients {
  double a = 0.0;
  double b = 0.0;
};

/// b_min(a) = (2a - 1)^2 / (4a).
double lemma_b_min(double a);

/// Largest a - b subject to a + b(n-1) <= n: a = (2n-1+sqrt(3n^2-3n+1))/(2n).
LemmaCoefficients ab_prior_free(int n);

/// Averaging guarantee 2/n - (n-1)/(2n(2n-1+sqrt(3n^2-3n+1))) - 1/n^2.
double prior_free_bound(int n);

/// 1 - ((n-1)/n)(1 - (a-b)/n) for the given coefficients.
double prior_free_bound_from(int n, LemmaCoefficients ab);

/// Extremization factor n(sqrt(3n^2-3n+1) - 2)/(n^2-n-1); 1 for n = 1.
double known_prior_d(int n);

/// Largest a - b subject to a + b(n-1) <= (2-d)n/d. Throws
/// kNegativeDiscriminant when the constraint set is empty and
/// kInvalidInput for d outside (0, 2].
LemmaCoefficients ab_known_prior(int n, double d);

/// Largest d for which ab_known_prior(n, d) is defined, capped at 2.
double known_prior_d_max(int n);

/// Guarantee of extremizing by d, i.e. 1 minus the proof's error bound
/// 1 + (d^2-2d)/n - (a-b)(n-1)d^2/n^2 with (a, b) = ab_known_prior(n, d).
double known_prior_objective(int n, double d);

struct KnownPriorOptimum {
  double d = 1.0;
  double bound = 1.0;
};

/// Maximizes known_prior_objective over d: golden-section search, then
/// bisection on the analytic slope.
KnownPriorOptimum optimize_known_prior(int n);

/// The optimized guarantee (optimize_known_prior(n).bound).
double known_prior_bound(int n);

/// The closed form ((3n^2-3n+1)^{3/2} - 9n^2 + 9n + 1) / (2(n^2-n+1)^2) as
/// commonly quoted for the known-prior guarantee. Disagrees with the
/// optimization chain (0.0845 vs 0.7601 at n = 2).
double known_prior_displayed_formula(int n);

/// Upper limit on any prior-free strategy: 2/n - 1/n^2.
double negative_bound_prior_free(int n);

/// Upper limit on any fixed extremization factor: 4n/(n+1)^2.
double negative_bound_known_prior(int n);

struct MinimaxResult {
  double d = 0.0;
  double worst_ratio = 0.0;
};

/// argmax_d min_k ratio_k(d) on [lo, hi] by ternary search (tol 1e-10).
/// Each ratio must be concave in d; ties resolve to the smallest d.
MinimaxResult minimax_d(const std::vector<std::function<double(double)>>& ratios,
                        double lo, double hi, double tol = 1e-10);

struct GuaranteeRow {
  int n = 1;
  double prior_free_bound = 1.0;
  double a_pf = 1.0;
  double b_pf = 0.25;
  double known_prior_d = 1.0;
  double a_kp = 1.0;
  double b_kp = 0.25;
  double known_prior_bound = 1.0;
  double neg_pf = 1.0;
  double neg_kp_conditional = 1.0;
  double known_prior_displayed_formula = 1.0;
  /// The displayed closed form and the optimization disagree by > 1e-6.
  bool formula_discrepancy = false;
};

using GuaranteeTable = std::vector<GuaranteeRow>;

GuaranteeTable emit_guarantee_table(int n_max);

/// Header plus one line per row; the ten core columns first, then the
/// displayed-formula value and the discrepancy flag (0/1).
std::string to_csv(const GuaranteeTable& table);

}  // namespace ragg
