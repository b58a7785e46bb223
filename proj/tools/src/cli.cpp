#include "ragg/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ragg/ragg.hpp"
#include "ragg/repro.hpp"

namespace ragg::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag values and unreadable inputs; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string num(double x) { return fmt::format("{:.12g}", x); }

Json subset_json(SignalSubset s) {
  Json out = Json::array();
  for (int e : s.members()) out.push_back(e + 1);
  return out;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError("--seed: expected an unsigned integer (decimal or 0x hex), got '" + text + "'");
  }
  return seed;
}

double parse_number(const std::string& text, const std::string& field) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(x)) {
    throw UsageError(field + ": expected a finite number, got '" + text + "'");
  }
  return x;
}

struct StrategyChoice {
  std::optional<Strategy> strategy;  // empty for random-expert
  std::string name;
};

StrategyChoice parse_strategy(const std::string& text) {
  if (text == "average") return {Strategy::average(), text};
  if (text == "prior") return {Strategy::prior_only(), text};
  if (text == "random-expert") return {std::nullopt, text};
  if (text.starts_with("extremize:")) {
    const double d = parse_number(text.substr(10), "--strategy extremize factor");
    return {Strategy::extremize(d), text};
  }
  if (text.starts_with("tabular:")) {
    const std::string path = text.substr(8);
    if (path.empty()) throw UsageError("--strategy: tabular needs a file, e.g. tabular:table.json");
    try {
      return {load_tabular_strategy(path), text};
    } catch (const Error& e) {
      throw UsageError("--strategy " + path + ": " + e.what());
    }
  }
  throw UsageError("--strategy: expected average, extremize:D, random-expert, prior or tabular:FILE, got '" +
                   text + "'");
}

double strategy_ratio(const InfoStructure& info, const StrategyChoice& choice) {
  if (choice.strategy) return approximation_ratio(info, apply(info, *choice.strategy));
  const double v_all = value(info, conditional_expectation(info, info.all_experts()));
  if (v_all <= kDegenerateThreshold) {
    throw Error(ErrorCode::kDegenerateStructure, "v(Y_[n]) is zero; the ratio is undefined");
  }
  return random_expert_value(info) / v_all;
}

InfoStructure load_input(const std::string& path, bool renormalize) {
  try {
    return load_instance(path, ValidationOptions{.renormalize = renormalize});
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void add_format(CLI::App* cmd, std::string& format, std::vector<std::string> choices) {
  format = choices.front();
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(choices)));
}

// check ------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::string condition;
  double tol = kDefaultTolerance;
  int enumeration_cap = 12;
  std::string format;
  bool renormalize = false;
};

Condition parse_condition(const std::string& text) {
  if (text == "weak") return Condition::kWeak;
  if (text == "projective") return Condition::kProjective;
  return Condition::kProjectiveRestricted;
}

CommandResult run_check(const CheckArgs& args) {
  const InfoStructure info = load_input(args.file, args.renormalize);
  const SubstitutesReport report =
      check(info, parse_condition(args.condition),
            CheckOptions{.tol = args.tol, .enumeration_cap = args.enumeration_cap});
  CommandResult res;
  res.exit_code = report.satisfied ? kExitOk : kExitViolation;
  if (args.format == "json") {
    Json doc{{"schema", 1},
             {"command", "check"},
             {"condition", std::string(to_string(report.condition))},
             {"tolerance", report.tolerance},
             {"satisfied", report.satisfied},
             {"worst_margin", report.worst_margin},
             {"triples_checked", report.triples_checked},
             {"violation_count", report.violation_count}};
    Json witnesses = Json::array();
    for (const Witness& w : report.witnesses) {
      witnesses.push_back({{"A", subset_json(w.a)},
                           {"B", subset_json(w.b)},
                           {"i", w.expert + 1},
                           {"lhs", w.lhs},
                           {"rhs", w.rhs},
                           {"margin", w.margin()}});
    }
    doc["witnesses"] = std::move(witnesses);
    res.output = dump(doc);
    return res;
  }
  std::string& out = res.output;
  out += fmt::format("{} substitutes: {}\n", to_string(report.condition),
                     report.satisfied ? "satisfied" : "violated");
  out += fmt::format("tolerance {:g}, triples checked {}, violations {}, worst margin {}\n",
                     report.tolerance, report.triples_checked, report.violation_count,
                     num(report.worst_margin));
  const char* label = report.satisfied ? "tightest" : "witness";
  for (const Witness& w : report.witnesses) {
    out += fmt::format("  {} A={} B={} i={}  lhs {}  rhs {}  margin {}\n", label, to_string(w.a),
                       to_string(w.b), w.expert + 1, num(w.lhs), num(w.rhs), num(w.margin()));
  }
  return res;
}

// ratio ------------------------------------------------------------------

struct RatioArgs {
  std::string file;
  std::string strategy;
  std::string format;
  bool renormalize = false;
};

CommandResult run_ratio(const RatioArgs& args) {
  const InfoStructure info = load_input(args.file, args.renormalize);
  const StrategyChoice choice = parse_strategy(args.strategy);
  const double ratio = strategy_ratio(info, choice);
  CommandResult res;
  if (args.format == "json") {
    res.output = dump(Json{{"schema", 1},
                           {"command", "ratio"},
                           {"strategy", choice.name},
                           {"n", info.n_experts()},
                           {"ratio", ratio}});
  } else {
    res.output = fmt::format("strategy {}\nratio {}\n", choice.name, num(ratio));
  }
  return res;
}

// bounds -----------------------------------------------------------------

struct BoundsArgs {
  int n_max = 10;
  std::string format;
};

Json row_json(const GuaranteeRow& r) {
  return Json{{"n", r.n},
              {"prior_free_bound", r.prior_free_bound},
              {"a_pf", r.a_pf},
              {"b_pf", r.b_pf},
              {"known_prior_d", r.known_prior_d},
              {"a_kp", r.a_kp},
              {"b_kp", r.b_kp},
              {"known_prior_bound", r.known_prior_bound},
              {"neg_pf", r.neg_pf},
              {"neg_kp_conditional", r.neg_kp_conditional},
              {"known_prior_displayed_formula", r.known_prior_displayed_formula},
              {"formula_discrepancy", r.formula_discrepancy}};
}

CommandResult run_bounds(const BoundsArgs& args) {
  const GuaranteeTable table = emit_guarantee_table(args.n_max);
  CommandResult res;
  if (args.format == "csv") {
    res.output = to_csv(table);
  } else if (args.format == "json") {
    Json rows = Json::array();
    for (const GuaranteeRow& r : table) rows.push_back(row_json(r));
    res.output = dump(Json{{"schema", 1}, {"command", "bounds"}, {"rows", std::move(rows)}});
  } else {
    std::string& out = res.output;
    out += fmt::format("{:>4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10} {}\n",
                       "n", "pf_bound", "a_pf", "b_pf", "kp_d", "a_kp", "b_kp", "kp_bound",
                       "neg_pf", "neg_kp", "displayed", "discrepancy");
    for (const GuaranteeRow& r : table) {
      out += fmt::format(
          "{:>4} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f} {:>10.6f} "
          "{:>10.6f} {:>10.6f} {}\n",
          r.n, r.prior_free_bound, r.a_pf, r.b_pf, r.known_prior_d, r.a_kp, r.b_kp,
          r.known_prior_bound, r.neg_pf, r.neg_kp_conditional, r.known_prior_displayed_formula,
          r.formula_discrepancy ? "yes" : "no");
    }
  }
  return res;
}

// gaussian ---------------------------------------------------------------

struct GaussianArgs {
  std::string family;
  int n = 2;
  double d = 1.0;
  std::uint64_t mc = 0;
  std::string seed = "0xC0FFEE";
  std::string format;
};

GaussianFamily parse_family(const std::string& text, int n) {
  if (text == "ind") return GaussianFamily::independent_standard(n);
  if (text == "dep") return GaussianFamily::fully_dependent(n);
  if (text.starts_with("imu:")) {
    return GaussianFamily::independent_mu(n, parse_number(text.substr(4), "--family imu mean"));
  }
  throw UsageError("--family: expected imu:MU, ind or dep, got '" + text + "'");
}

CommandResult run_gaussian(const GaussianArgs& args) {
  const GaussianFamily family = parse_family(args.family, args.n);
  const double exact = closed_form_ratio(family, args.d);
  CommandResult res;
  Json doc{{"schema", 1},
           {"command", "gaussian"},
           {"family", args.family},
           {"n", args.n},
           {"d", args.d},
           {"closed_form_ratio", exact}};
  std::string text = fmt::format("family {} n={} d={}\nclosed-form ratio {}\n", args.family, args.n,
                                 num(args.d), num(exact));
  if (args.mc > 0) {
    const std::uint64_t seed = parse_seed(args.seed);
    const MonteCarloEstimate est = sample_and_estimate_ratio(family, args.d, args.mc, seed);
    const double diff = est.ratio_hat - exact;
    const bool agrees = std::abs(diff) <= 4.0 * est.stderr_ + 1e-12;
    res.exit_code = agrees ? kExitOk : kExitViolation;
    doc["monte_carlo"] = Json{{"samples", est.samples},
                              {"seed", seed},
                              {"ratio", est.ratio_hat},
                              {"stderr", est.stderr_},
                              {"difference", diff},
                              {"within_4_stderr", agrees}};
    text += fmt::format("monte carlo ratio {} (stderr {:.3g}, {} samples, seed {:#x}); {}\n",
                        num(est.ratio_hat), est.stderr_, est.samples, seed,
                        agrees ? "agrees within 4 stderr" : "DISAGREES beyond 4 stderr");
  }
  res.output = args.format == "json" ? dump(doc) : text;
  return res;
}

// catalog ----------------------------------------------------------------

struct CatalogArgs {
  std::string name;
  std::optional<int> n;
  std::optional<int> p;
  std::string setting = "prior-free";
  std::string sign = "plus";
  int alphabet = 2;
  std::string seed = "0";
  int max_attempts = 10000;
  std::string output;
  std::string format;
};

struct Generator {
  const char* name;
  const char* description;
};

constexpr Generator kGenerators[] = {
    {"secret-sharing", "Shamir threshold scheme; --n (default 3), --p prime > n (default 5)"},
    {"tight", "two-expert tight instance; --setting prior-free|known-prior, --sign plus|minus"},
    {"random-projective",
     "rejection-sampled projective-substitutes structure; --n (default 3), --alphabet, --seed, "
     "--max-attempts"},
};

CommandResult run_catalog_list(const std::string& format) {
  CommandResult res;
  const std::vector<CatalogEntry> entries = catalog_entries();
  if (format == "json") {
    Json fixed = Json::array();
    for (const CatalogEntry& e : entries) {
      fixed.push_back({{"name", e.name}, {"description", e.description}, {"n", e.structure.n_experts()},
                       {"states", e.structure.num_states()}});
    }
    Json gens = Json::array();
    for (const Generator& g : kGenerators) gens.push_back({{"name", g.name}, {"description", g.description}});
    res.output = dump(Json{{"schema", 1}, {"command", "catalog list"}, {"instances", fixed},
                           {"generators", gens}});
    return res;
  }
  for (const CatalogEntry& e : entries) {
    res.output += fmt::format("{:<26} {}\n", e.name, e.description);
  }
  for (const Generator& g : kGenerators) res.output += fmt::format("{:<26} {}\n", g.name, g.description);
  return res;
}

InfoStructure build_catalog_instance(const CatalogArgs& args) {
  if (args.name == "xor") return xor_structure();
  if (args.name == "same-bit") return same_bit_structure();
  if (args.name == "example-2x2") return example_2x2();
  if (args.name == "secret-sharing") return secret_sharing(args.n.value_or(3), args.p.value_or(5));
  if (args.name == "tight") {
    const Setting setting = args.setting == "known-prior" ? Setting::kKnownPrior : Setting::kPriorFree;
    return tight_structure(setting, args.sign == "minus" ? Sign::kMinus : Sign::kPlus);
  }
  if (args.name == "random-projective") {
    return random_projective_structure(args.n.value_or(3), args.alphabet, parse_seed(args.seed),
                                       args.max_attempts);
  }
  for (CatalogEntry& e : catalog_entries()) {
    if (e.name == args.name) return std::move(e.structure);
  }
  throw UsageError("NAME: unknown catalog instance '" + args.name + "' (see 'catalog list')");
}

CommandResult run_catalog_emit(const CatalogArgs& args) {
  const InfoStructure info = build_catalog_instance(args);
  CommandResult res;
  const std::string text = serialize_instance(info);
  if (args.output.empty() || args.output == "-") {
    res.output = text;
  } else {
    try {
      save_instance(args.output, info);
    } catch (const Error& e) {
      throw UsageError(std::string("-o: ") + e.what());
    }
    res.output = fmt::format("wrote {} ({} experts, {} states)\n", args.output, info.n_experts(),
                             info.num_states());
  }
  return res;
}

// reveal -----------------------------------------------------------------

struct RevealArgs {
  std::string file;
  double tol = kDefaultTolerance;
  std::string format;
  bool renormalize = false;
};

CommandResult run_reveal(const RevealArgs& args) {
  const InfoStructure info = load_input(args.file, args.renormalize);
  const RevelationReport report = check_revelation_dominance(info, RevelationOptions{.tol = args.tol});
  CommandResult res;
  res.exit_code = report.dominant ? kExitOk : kExitViolation;
  if (args.format == "json") {
    Json witnesses = Json::array();
    for (const RevelationWitness& w : report.witnesses) {
      witnesses.push_back({{"i", w.expert + 1},
                           {"team", subset_json(w.team)},
                           {"revealers", subset_json(w.revealers)},
                           {"loss_reveal", w.loss_reveal},
                           {"loss_withhold", w.loss_withhold}});
    }
    res.output = dump(Json{{"schema", 1},
                           {"command", "reveal"},
                           {"tolerance", report.tolerance},
                           {"dominant", report.dominant},
                           {"configurations_checked", report.configurations_checked},
                           {"violation_count", report.violation_count},
                           {"witnesses", std::move(witnesses)}});
    return res;
  }
  res.output = fmt::format("full revelation: {}\n", report.dominant ? "dominant" : "not dominant");
  res.output += fmt::format("tolerance {:g}, configurations checked {}, violations {}\n",
                            report.tolerance, report.configurations_checked, report.violation_count);
  for (const RevelationWitness& w : report.witnesses) {
    res.output += fmt::format("  witness i={} team={} revealers={}  reveal loss {}  withhold loss {}\n",
                              w.expert + 1, to_string(w.team), to_string(w.revealers),
                              num(w.loss_reveal), num(w.loss_withhold));
  }
  return res;
}

// search -----------------------------------------------------------------

struct SearchArgs {
  int n = 2;
  int trials = 100;
  std::string strategy = "average";
  std::string seed = "0";
  int alphabet = 2;
  int max_attempts = 10000;
  std::string format;
};

CommandResult run_search(const SearchArgs& args) {
  if (args.trials < 1) throw UsageError("--trials: must be >= 1");
  const StrategyChoice choice = parse_strategy(args.strategy);
  const std::uint64_t base = parse_seed(args.seed);
  SplitMix64 seeds(base);
  double min_ratio = INFINITY;
  int argmin = -1;
  std::uint64_t argmin_seed = 0;
  for (int t = 0; t < args.trials; ++t) {
    const std::uint64_t seed = seeds.next();
    const InfoStructure info = random_projective_structure(args.n, args.alphabet, seed, args.max_attempts);
    const double r = strategy_ratio(info, choice);
    if (r < min_ratio) {
      min_ratio = r;
      argmin = t;
      argmin_seed = seed;
    }
  }
  CommandResult res;
  if (args.format == "json") {
    res.output = dump(Json{{"schema", 1},
                           {"command", "search"},
                           {"certified", false},
                           {"note", "empirical minimum over sampled instances; not a worst-case bound"},
                           {"strategy", choice.name},
                           {"n", args.n},
                           {"trials", args.trials},
                           {"seed", base},
                           {"min_ratio", min_ratio},
                           {"argmin_trial", argmin},
                           {"argmin_instance_seed", argmin_seed},
                           {"prior_free_bound", prior_free_bound(args.n)},
                           {"known_prior_bound", known_prior_bound(args.n)}});
    return res;
  }
  res.output = fmt::format(
      "NON-CERTIFIED: empirical minimum over {} sampled projective-substitutes instances\n"
      "strategy {} n={} seed {:#x}\n"
      "min ratio {} at trial {} (instance seed {:#x}; emit with catalog emit random-projective)\n"
      "reference guarantees: prior-free {}, known-prior {}\n",
      args.trials, choice.name, args.n, base, num(min_ratio), argmin, argmin_seed,
      num(prior_free_bound(args.n)), num(known_prior_bound(args.n)));
  return res;
}

// repro ------------------------------------------------------------------

struct ReproArgs {
  std::uint64_t mc_samples = 1'000'000;
  int instances = 200;
  std::string seed = "0xC0FFEE";
  std::string format;
};

CommandResult run_repro(const ReproArgs& args) {
  const repro::Options options{args.mc_samples, args.instances, parse_seed(args.seed)};
  const std::vector<repro::CriterionResult> results = repro::run_all(options);
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  CommandResult res;
  res.exit_code = all ? kExitOk : kExitViolation;
  if (args.format == "json") {
    Json rows = Json::array();
    for (const auto& r : results) {
      rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    res.output = dump(Json{{"schema", 1}, {"command", "repro"}, {"passed", all}, {"criteria", rows}});
  } else {
    res.output = repro::format_table(results);
  }
  return res;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Robust forecast aggregation toolkit", "ragg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ragg 0.1.0");
  std::function<CommandResult()> action;

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Check a substitutes condition on an instance file");
  check_cmd->add_option("file", check_args.file, "Instance JSON")->required();
  check_cmd->add_option("--condition", check_args.condition, "Condition to check")
      ->required()
      ->check(CLI::IsMember({"weak", "projective", "projective-restricted"}));
  check_cmd->add_option("--tol", check_args.tol, "Violation tolerance")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--enumeration-cap", check_args.enumeration_cap, "Largest n to enumerate")
      ->check(CLI::Range(1, 30));
  check_cmd->add_flag("--renormalize", check_args.renormalize,
                      "Rescale probabilities that sum to within 1e-6 of one");
  add_format(check_cmd, check_args.format, {"text", "json"});
  check_cmd->callback([&] { action = [&] { return run_check(check_args); }; });

  RatioArgs ratio_args;
  auto* ratio_cmd = app.add_subcommand("ratio", "Approximation ratio of an aggregation strategy");
  ratio_cmd->add_option("file", ratio_args.file, "Instance JSON")->required();
  ratio_cmd->add_option("--strategy", ratio_args.strategy,
                        "average | extremize:D | random-expert | prior | tabular:FILE")
      ->required();
  ratio_cmd->add_flag("--renormalize", ratio_args.renormalize,
                      "Rescale probabilities that sum to within 1e-6 of one");
  add_format(ratio_cmd, ratio_args.format, {"text", "json"});
  ratio_cmd->callback([&] { action = [&] { return run_ratio(ratio_args); }; });

  BoundsArgs bounds_args;
  auto* bounds_cmd = app.add_subcommand("bounds", "Guarantee table for n = 1..N");
  bounds_cmd->add_option("--n-max", bounds_args.n_max, "Largest n")->check(CLI::Range(1, 100000));
  add_format(bounds_cmd, bounds_args.format, {"csv", "json", "table"});
  bounds_cmd->callback([&] { action = [&] { return run_bounds(bounds_args); }; });

  GaussianArgs gauss_args;
  auto* gauss_cmd = app.add_subcommand("gaussian", "Gaussian family ratios, optionally by Monte Carlo");
  gauss_cmd->add_option("--family", gauss_args.family, "imu:MU | ind | dep")->required();
  gauss_cmd->add_option("--n", gauss_args.n, "Number of experts")->required()->check(CLI::Range(1, 64));
  gauss_cmd->add_option("--d", gauss_args.d, "Extremization factor (1 = averaging)");
  gauss_cmd->add_option("--mc", gauss_args.mc, "Monte Carlo samples (0 = closed form only)");
  gauss_cmd->add_option("--seed", gauss_args.seed, "PRNG seed");
  add_format(gauss_cmd, gauss_args.format, {"text", "json"});
  gauss_cmd->callback([&] { action = [&] { return run_gaussian(gauss_args); }; });

  auto* catalog_cmd = app.add_subcommand("catalog", "Built-in instances");
  catalog_cmd->require_subcommand(1);
  std::string list_format;
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List instances and generators");
  add_format(list_cmd, list_format, {"text", "json"});
  list_cmd->callback([&] { action = [&] { return run_catalog_list(list_format); }; });
  CatalogArgs emit_args;
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "Write an instance file");
  emit_cmd->add_option("name", emit_args.name, "Instance or generator name")->required();
  emit_cmd->add_option("--n", emit_args.n, "Experts (generators)")->check(CLI::Range(1, 64));
  emit_cmd->add_option("--p", emit_args.p, "Field size (secret-sharing)");
  emit_cmd->add_option("--setting", emit_args.setting, "tight: prior-free | known-prior")
      ->check(CLI::IsMember({"prior-free", "known-prior"}));
  emit_cmd->add_option("--sign", emit_args.sign, "tight: plus | minus")
      ->check(CLI::IsMember({"plus", "minus"}));
  emit_cmd->add_option("--alphabet", emit_args.alphabet, "random-projective: signal alphabet size");
  emit_cmd->add_option("--seed", emit_args.seed, "random-projective: seed");
  emit_cmd->add_option("--max-attempts", emit_args.max_attempts, "random-projective: attempts")
      ->check(CLI::PositiveNumber);
  emit_cmd->add_option("-o,--output", emit_args.output, "Output path (stdout if omitted)");
  emit_cmd->callback([&] { action = [&] { return run_catalog_emit(emit_args); }; });

  RevealArgs reveal_args;
  auto* reveal_cmd = app.add_subcommand("reveal", "Is full revelation a dominant strategy?");
  reveal_cmd->add_option("file", reveal_args.file, "Instance JSON")->required();
  reveal_cmd->add_option("--tol", reveal_args.tol, "Tolerance")->check(CLI::NonNegativeNumber);
  reveal_cmd->add_flag("--renormalize", reveal_args.renormalize,
                       "Rescale probabilities that sum to within 1e-6 of one");
  add_format(reveal_cmd, reveal_args.format, {"text", "json"});
  reveal_cmd->callback([&] { action = [&] { return run_reveal(reveal_args); }; });

  SearchArgs search_args;
  auto* search_cmd =
      app.add_subcommand("search", "Empirical (non-certified) minimum ratio over sampled instances");
  search_cmd->add_option("--n", search_args.n, "Number of experts")->required()->check(CLI::Range(1, 12));
  search_cmd->add_option("--trials", search_args.trials, "Sampled instances")->required();
  search_cmd->add_option("--strategy", search_args.strategy,
                         "average | extremize:D | random-expert | prior | tabular:FILE");
  search_cmd->add_option("--seed", search_args.seed, "Seed");
  search_cmd->add_option("--alphabet", search_args.alphabet, "Signal alphabet size")
      ->check(CLI::Range(2, 64));
  search_cmd->add_option("--max-attempts", search_args.max_attempts, "Attempts per instance")
      ->check(CLI::PositiveNumber);
  add_format(search_cmd, search_args.format, {"text", "json"});
  search_cmd->callback([&] { action = [&] { return run_search(search_args); }; });

  ReproArgs repro_args;
  auto* repro_cmd = app.add_subcommand("repro", "Run the acceptance suite and print a pass/fail table");
  repro_cmd->add_option("--mc-samples", repro_args.mc_samples, "Monte Carlo samples per case")
      ->check(CLI::PositiveNumber);
  repro_cmd->add_option("--instances", repro_args.instances, "Random instances for the property suite")
      ->check(CLI::PositiveNumber);
  repro_cmd->add_option("--seed", repro_args.seed, "Seed");
  add_format(repro_cmd, repro_args.format, {"text", "json"});
  repro_cmd->callback([&] { action = [&] { return run_repro(repro_args); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    return {kExitOk, target->help(), ""};
  } catch (const CLI::CallForAllHelp&) {
    return {kExitOk, app.help("", CLI::AppFormatMode::All), ""};
  } catch (const CLI::CallForVersion&) {
    return {kExitOk, "ragg 0.1.0\n", ""};
  } catch (const CLI::ParseError& e) {
    return {kExitUsage, "", "usage error: " + first_line(e.what())};
  }

  try {
    if (!action) return {kExitUsage, "", "usage error: no command given"};
    return action();
  } catch (const UsageError& e) {
    return {kExitUsage, "", std::string("error: ") + e.what()};
  } catch (const Error& e) {
    return {kExitUsage, "", fmt::format("error: {}: {}", to_string(e.code()), first_line(e.what()))};
  }
}

}  // namespace ragg::cli
