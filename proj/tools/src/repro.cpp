#include "ragg/repro.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"

#include "ragg/cli.hpp"
#include "ragg/ragg.hpp"

namespace ragg::repro {

namespace {

const double kSqrt7 = std::sqrt(7.0);

class Checker {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      fail(fmt::format("{}: got {:.12g}, want {:.12g} (tol {:g})", what, got, want, tol));
    }
  }
  void at_least(const std::string& what, double got, double floor) {
    if (!(got >= floor)) fail(fmt::format("{}: {:.12g} < {:.12g}", what, got, floor));
  }
  void expect(const std::string& what, bool ok) {
    if (!ok) fail(what);
  }
  void fail(std::string message) {
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(std::move(message));
  }
  bool ok() const { return failures_ == 0; }

  CriterionResult result(int id, std::string title, std::string success_detail) const {
    CriterionResult r{id, std::move(title), ok(), std::move(success_detail)};
    if (!ok()) {
      r.detail = fmt::format("{} failure(s): ", failures_);
      for (std::size_t k = 0; k < messages_.size(); ++k) {
        r.detail += (k ? "; " : "") + messages_[k];
      }
    }
    return r;
  }

 private:
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
};

double belief_value(const InfoStructure& info, SignalSubset a) {
  return value(info, conditional_expectation(info, a));
}

double distance(const InfoStructure& info, const StateVariable& x, const StateVariable& z) {
  return mean_squared_distance(info, x, z);
}

CriterionResult xor_fixture() {
  Checker c;
  const InfoStructure info = xor_structure();
  c.near("v(Y_1)", belief_value(info, SignalSubset::single(0)), 0.0, 1e-12);
  c.near("v(Y_2)", belief_value(info, SignalSubset::single(1)), 0.0, 1e-12);
  c.near("v(Y_12)", belief_value(info, info.all_experts()), 0.25, 1e-12);
  const SubstitutesReport weak = check_weak(info);
  c.expect("check_weak should fail", !weak.satisfied);
  c.expect("weak witness list should be nonempty", !weak.witnesses.empty());
  return c.result(1, "XOR fixture",
                  fmt::format("v = 0, 0, 0.25; weak violated, {} witness(es), worst margin {:.6g}",
                              weak.witnesses.size(), weak.worst_margin));
}

bool matches_values(const StateVariable& x, std::initializer_list<double> allowed, double tol) {
  for (double v : x.values()) {
    bool hit = false;
    for (double a : allowed) hit = hit || std::abs(v - a) <= tol;
    if (!hit) return false;
  }
  return true;
}

CriterionResult example_fixture() {
  Checker c;
  const InfoStructure info = example_2x2();
  const SignalSubset a = SignalSubset::single(0);
  const SignalSubset b = SignalSubset::single(1);
  const StateVariable yb = conditional_expectation(info, b);
  const StateVariable pred = prediction(info, b, a);
  c.expect("Y_B values should be {0.4, 1.6}", matches_values(yb, {0.4, 1.6}, 1e-12));
  c.expect("Y_B->A values should be {0.88, 1.12}", matches_values(pred, {0.88, 1.12}, 1e-12));
  c.near("E[(Y_B - Y_B->A)^2]", distance(info, yb, pred), 0.3456, 1e-12);
  c.near("E[(Y - Y_A)^2]", distance(info, info.outcome(), conditional_expectation(info, a)), 0.24,
         1e-12);
  c.expect("check_projective should pass", check_projective(info).satisfied);
  return c.result(2, "2x2 example",
                  "Y_B {0.4,1.6}, Y_B->A {0.88,1.12}, 0.3456, 0.24; projective holds");
}

CriterionResult secret_sharing_fixture() {
  Checker c;
  const InfoStructure info = secret_sharing(3, 5);
  for (SignalSubset a : enumerate_subsets(3)) {
    c.near("v(Y_" + to_string(a) + ")", belief_value(info, a), a.size() / 3.0, 1e-12);
  }
  c.expect("check_weak should pass", check_weak(info).satisfied);
  const SubstitutesReport projective = check_projective(info);
  c.expect("check_projective should fail", !projective.satisfied);
  const SubstitutesReport restricted = check_projective_restricted(info);
  const RevelationReport reveal = check_revelation_dominance(info);
  c.expect("revelation should not be dominant", !reveal.dominant);
  c.expect("revelation witnesses should be nonempty", !reveal.witnesses.empty());
  c.expect("revelation verdict should equal the restricted projective verdict",
           reveal.dominant == restricted.satisfied);
  for (const RevelationWitness& w : reveal.witnesses) {
    const std::string tag = fmt::format("witness (i={}, A={}, B={})", w.expert + 1,
                                        to_string(w.team), to_string(w.revealers));
    c.expect(tag + " needs i in A and i not in B",
             w.team.contains(w.expert) && !w.revealers.contains(w.expert));
    const SignalSubset b2 = w.revealers.with(w.expert);
    c.near(tag + " reveal loss",
           distance(info, conditional_expectation(info, b2), prediction(info, b2, w.team)),
           w.loss_reveal, 1e-12);
    c.near(tag + " withhold loss",
           distance(info, conditional_expectation(info, w.revealers),
                    prediction(info, w.revealers, w.team)),
           w.loss_withhold, 1e-12);
    c.expect(tag + " must cost the team", w.loss_reveal > w.loss_withhold + reveal.tolerance);
  }
  std::string detail = fmt::format("v(Y_A) = |A|/3; weak holds; projective fails ({} violations)",
                                   projective.violation_count);
  if (!reveal.witnesses.empty()) {
    const RevelationWitness& w = reveal.witnesses.front();
    detail += fmt::format("; reveal loss {:.6g} > withhold {:.6g} at i={}, A={}, B={}",
                          w.loss_reveal, w.loss_withhold, w.expert + 1, to_string(w.team),
                          to_string(w.revealers));
  }
  return c.result(3, "secret sharing (3, 5)", detail);
}

CriterionResult bounds_at_two() {
  Checker c;
  const double pf = prior_free_bound(2);
  const KnownPriorOptimum kp = optimize_known_prior(2);
  const double d_formula = 2.0 * (kSqrt7 - 2.0);
  c.near("prior_free_bound(2)", pf, (3.0 + kSqrt7) / 8.0, 1e-12);
  c.near("known_prior_bound(2)", known_prior_bound(2), (7.0 * kSqrt7 - 17.0) / 2.0, 1e-9);
  c.near("optimizer d at n=2", kp.d, d_formula, 1e-9);
  c.near("known_prior_d(2)", known_prior_d(2), d_formula, 1e-9);
  return c.result(4, "bounds at n = 2",
                  fmt::format("prior-free {:.12f}, known-prior {:.12f}, d {:.10f}", pf, kp.bound,
                              kp.d));
}

CriterionResult asymptotics() {
  Checker c;
  const int n = 1'000'000;
  const double pf = n * prior_free_bound(n);
  const double kp = n * known_prior_bound(n);
  const double d = known_prior_d(n);
  c.near("n * prior_free_bound(n)", pf, 1.8660, 1e-3);
  c.near("n * known_prior_bound(n)", kp, 2.59808, 1e-3);
  c.near("known_prior_d(n)", d, std::numbers::sqrt3, 1e-3);
  return c.result(5, "asymptotics at n = 10^6",
                  fmt::format("n*pf {:.6f}, n*kp {:.6f}, d {:.6f}", pf, kp, d));
}

CriterionResult tight_instances() {
  Checker c;
  const double pf_target = (3.0 + kSqrt7) / 8.0;
  const double kp_target = (7.0 * kSqrt7 - 17.0) / 2.0;
  for (Sign sign : {Sign::kPlus, Sign::kMinus}) {
    const char* tag = sign == Sign::kPlus ? "+" : "-";
    const InfoStructure pf = tight_structure(Setting::kPriorFree, sign);
    c.near(fmt::format("prior-free {} tabular ratio", tag),
           approximation_ratio(pf, apply(pf, optimal_tabular_aggregator(Setting::kPriorFree))),
           pf_target, 1e-9);
    c.at_least(fmt::format("prior-free {} averaging ratio", tag),
               approximation_ratio(pf, apply(pf, Strategy::average())), prior_free_bound(2) - 1e-9);
    c.expect(fmt::format("prior-free {} should be projective", tag),
             check_projective(pf).satisfied);

    const InfoStructure kp = tight_structure(Setting::kKnownPrior, sign);
    c.near(fmt::format("known-prior {} tabular ratio", tag),
           approximation_ratio(kp, apply(kp, optimal_tabular_aggregator(Setting::kKnownPrior))),
           kp_target, 1e-9);
    c.expect(fmt::format("known-prior {} should be projective", tag),
             check_projective(kp).satisfied);
  }
  return c.result(6, "tight instances",
                  fmt::format("tabular {:.10f} (prior-free), {:.10f} (known prior); all projective",
                              pf_target, kp_target));
}

CriterionResult gaussian_closed_forms() {
  Checker c;
  for (int n : {2, 3, 5, 10}) {
    const double nn = n;
    c.near(fmt::format("I_mu n={} d=1", n), closed_form_ratio(GaussianFamily::independent_mu(n, 1.5), 1.0),
           2.0 / nn - 1.0 / (nn * nn), 1e-12);
    for (double d : {0.0, 0.5, 1.0, 1.5, 2.0, 2.0 * nn / (nn + 1.0)}) {
      c.near(fmt::format("I_ind n={} d={}", n, d),
             closed_form_ratio(GaussianFamily::independent_standard(n), d),
             1.0 - (nn - d) * (nn - d) / (nn * nn), 1e-12);
      c.near(fmt::format("I_dep n={} d={}", n, d),
             closed_form_ratio(GaussianFamily::fully_dependent(n), d), 1.0 - (1.0 - d) * (1.0 - d),
             1e-12);
    }
    const GaussianFamily ind = GaussianFamily::independent_standard(n);
    const GaussianFamily dep = GaussianFamily::fully_dependent(n);
    const MinimaxResult mm = minimax_d({[&](double d) { return closed_form_ratio(ind, d); },
                                        [&](double d) { return closed_form_ratio(dep, d); }},
                                       0.0, 2.0);
    c.near(fmt::format("minimax d n={}", n), mm.d, 2.0 * nn / (nn + 1.0), 1e-8);
    c.near(fmt::format("minimax ratio n={}", n), mm.worst_ratio, 4.0 * nn / ((nn + 1.0) * (nn + 1.0)),
           1e-8);
  }
  return c.result(7, "Gaussian closed forms",
                  "closed forms for n in {2,3,5,10}; minimax d = 2n/(n+1), ratio 4n/(n+1)^2");
}

CriterionResult monte_carlo(const Options& opts) {
  Checker c;
  struct Case {
    GaussianFamily family;
    double d;
    std::string label;
  };
  std::vector<Case> cases;
  for (double mu : {-10.0, 0.0, 3.7, 100.0}) {
    cases.push_back({GaussianFamily::independent_mu(3, mu), 1.0, fmt::format("I_mu(3, {})", mu)});
  }
  for (int n : {2, 3, 5, 10}) {
    const double dstar = 2.0 * n / (n + 1.0);
    for (double d : {1.0, dstar}) {
      cases.push_back({GaussianFamily::independent_standard(n), d,
                       fmt::format("I_ind({}) d={:.4f}", n, d)});
      cases.push_back({GaussianFamily::fully_dependent(n), d,
                       fmt::format("I_dep({}) d={:.4f}", n, d)});
    }
  }
  double worst_diff = 0.0;
  double worst_se = 0.0;
  for (const Case& k : cases) {
    const MonteCarloEstimate est = sample_and_estimate_ratio(k.family, k.d, opts.mc_samples, opts.seed);
    const double exact = closed_form_ratio(k.family, k.d);
    const double diff = std::abs(est.ratio_hat - exact);
    c.expect(fmt::format("{}: |{:.9g} - {:.9g}| exceeds 4 se ({:.3g})", k.label, est.ratio_hat, exact,
                         est.stderr_),
             diff <= 4.0 * est.stderr_ + 1e-12);
    worst_diff = std::max(worst_diff, diff);
    worst_se = std::max(worst_se, est.stderr_);
    // Rerun with a different worker count; streams fix the draws.
    const MonteCarloEstimate again = sample_and_estimate_ratio(
        k.family, k.d, opts.mc_samples, opts.seed, MonteCarloOptions{.workers = 3});
    c.expect(k.label + ": rerun is not bit-identical",
             std::bit_cast<std::uint64_t>(again.ratio_hat) == std::bit_cast<std::uint64_t>(est.ratio_hat) &&
                 std::bit_cast<std::uint64_t>(again.stderr_) == std::bit_cast<std::uint64_t>(est.stderr_));
  }
  return c.result(8, "Monte Carlo",
                  fmt::format("{} cases x {} samples, seed {:#x}; max |diff| {:.3g}, max se {:.3g}; "
                              "reruns bit-identical",
                              cases.size(), opts.mc_samples, opts.seed, worst_diff, worst_se));
}

// Lemma grid: a in {1/4, 1/2, 1, 3/2, 5/2}, b = b_min(a) + {0, 0.1, 0.5, 1, 2}.
std::vector<LemmaCoefficients> lemma_grid() {
  std::vector<LemmaCoefficients> grid;
  for (double a : {0.25, 0.5, 1.0, 1.5, 2.5}) {
    for (double extra : {0.0, 0.1, 0.5, 1.0, 2.0}) grid.push_back({a, lemma_b_min(a) + extra});
  }
  return grid;
}

void check_properties(const InfoStructure& info, const std::string& tag, Checker& c) {
  constexpr double kTol = 1e-9;
  const int n = info.n_experts();
  const SignalSubset everyone = info.all_experts();
  const StateVariable& y = info.outcome();
  const StateVariable y_all = conditional_expectation(info, everyone);
  const double v_all = value(info, y_all);

  // (a)
  const bool projective = check_projective(info).satisfied;
  const bool weak = check_weak(info).satisfied;
  c.expect(tag + " (a) sampled instance must be projective", projective);
  c.expect(tag + " (a) projective without weak", !projective || weak);

  // (b)
  if (weak) c.at_least(tag + " (b) random expert", random_expert_value(info), v_all / n - kTol);

  // (c)
  std::vector<StateVariable> single;
  for (int i = 0; i < n; ++i) single.push_back(conditional_expectation(info, SignalSubset::single(i)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const StateVariable yij = conditional_expectation(info, SignalSubset::of({i, j}));
      const double lhs = distance(info, single[i], single[j]);
      const double near_pair = distance(info, yij, single[i]) + distance(info, yij, single[j]);
      const double spread = variance(info, single[i]) + variance(info, single[j]);
      for (const LemmaCoefficients& ab : lemma_grid()) {
        c.at_least(fmt::format("{} (c) lemma i={} j={} a={} b={:.4f}", tag, i + 1, j + 1, ab.a, ab.b),
                   lhs, ab.a * near_pair - ab.b * spread - kTol);
      }
    }
  }

  // (d), (e)
  c.at_least(tag + " (d) averaging", approximation_ratio(info, apply(info, Strategy::average())),
             prior_free_bound(n) - kTol);
  c.at_least(tag + " (e) extremizing",
             approximation_ratio(info, apply(info, Strategy::extremize(known_prior_d(n)))),
             known_prior_bound(n) - kTol);

  // (f)
  c.expect(tag + " (f) revelation vs restricted projective",
           check_revelation_dominance(info).dominant == check_projective_restricted(info).satisfied);

  // (g) Pythagorean: C = Y_{A''} is constant on the A'-partition for A'' within A'.
  for (SignalSubset outer : enumerate_subsets(n)) {
    const StateVariable b = conditional_expectation(info, outer);
    for (SignalSubset inner : enumerate_subsets(n)) {
      if (!inner.is_subset_of(outer)) continue;
      const StateVariable cvar = conditional_expectation(info, inner);
      c.near(fmt::format("{} (g) pythagorean A'={} C=Y_{}", tag, to_string(outer), to_string(inner)),
             distance(info, y, cvar), distance(info, y, b) + distance(info, b, cvar), kTol);
    }
  }
  // (g) Cor 2.11 form of the ratio.
  for (const Strategy& s : {Strategy::average(), Strategy::extremize(known_prior_d(n))}) {
    const StateVariable z = apply(info, s);
    c.near(tag + " (g) ratio forms " + s.name(), value(info, z) / v_all,
           1.0 - distance(info, y_all, z) / distance(info, y_all, StateVariable::constant(info.num_states(), expectation(info, y))),
           kTol);
  }
}

CriterionResult property_suite(const Options& opts) {
  Checker c;
  SplitMix64 seeds(opts.seed);
  int count[5] = {};
  for (int j = 0; j < opts.property_instances; ++j) {
    const int n = 2 + j % 3;
    const std::uint64_t seed = seeds.next();
    try {
      const InfoStructure info = random_projective_structure(n, 2, seed);
      check_properties(info, fmt::format("instance {} (n={}, seed {:#x})", j, n, seed), c);
      ++count[n];
    } catch (const Error& e) {
      c.fail(fmt::format("instance {}: {}", j, e.what()));
    }
  }
  return c.result(9, "property suite",
                  fmt::format("{} instances (n=2: {}, n=3: {}, n=4: {}); properties (a)-(g) hold",
                              opts.property_instances, count[2], count[3], count[4]));
}

CriterionResult bounds_discrepancy() {
  Checker c;
  const cli::CommandResult res = cli::run({"bounds", "--n-max", "2", "--format", "json"});
  c.expect("bounds exit code " + std::to_string(res.exit_code), res.exit_code == cli::kExitOk);
  double displayed = 0.0;
  double optimized = 0.0;
  bool flag = false;
  try {
    const auto doc = nlohmann::json::parse(res.output);
    c.expect("schema should be 1", doc.at("schema") == 1);
    for (const auto& row : doc.at("rows")) {
      if (row.at("n") != 2) continue;
      displayed = row.at("known_prior_displayed_formula").get<double>();
      optimized = row.at("known_prior_bound").get<double>();
      flag = row.at("formula_discrepancy").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    c.fail(std::string("bounds JSON: ") + e.what());
  }
  c.near("displayed formula at n=2", displayed, 0.0845, 5e-4);
  c.near("optimized bound at n=2", optimized, 0.7601, 5e-4);
  c.expect("discrepancy flag should be set at n=2", flag);
  return c.result(10, "closed-form discrepancy surfaced",
                  fmt::format("n=2: displayed {:.6f}, optimized {:.6f}, formula_discrepancy {}",
                              displayed, optimized, flag));
}

}  // namespace

CriterionResult run_criterion(int id, const Options& options) {
  try {
    switch (id) {
      case 1: return xor_fixture();
      case 2: return example_fixture();
      case 3: return secret_sharing_fixture();
      case 4: return bounds_at_two();
      case 5: return asymptotics();
      case 6: return tight_instances();
      case 7: return gaussian_closed_forms();
      case 8: return monte_carlo(options);
      case 9: return property_suite(options);
      case 10: return bounds_discrepancy();
      default: break;
    }
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
  throw Error(ErrorCode::kInvalidInput, "no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const Options& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::string out;
  int passed = 0;
  for (const CriterionResult& r : results) {
    passed += r.passed ? 1 : 0;
    out += fmt::format("[{}] {:>2}  {:<34} {}\n", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail);
  }
  out += fmt::format("{}/{} criteria passed\n", passed, results.size());
  return out;
}

}  // namespace ragg::repro
