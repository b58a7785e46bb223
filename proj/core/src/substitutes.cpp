#include "ragg/substitutes.hpp"

#include <limits>

#include "bounded_worst.hpp"
#include "prediction_table.hpp"
#include "ragg/error.hpp"

namespace ragg {

std::string_view to_string(Condition condition) {
  switch (condition) {
    case Condition::kWeak: return "weak";
    case Condition::kProjective: return "projective";
    case Condition::kProjectiveRestricted: return "projective-restricted";
  }
  return "unknown";
}

namespace {

class ReportBuilder {
 public:
  ReportBuilder(Condition condition, const CheckOptions& options)
      : options_(options), violations_(options.witness_cap) {
    report_.condition = condition;
    report_.tolerance = options.tol;
    report_.worst_margin = std::numeric_limits<double>::infinity();
  }

  void add(const Witness& w) {
    const double margin = w.margin();
    const std::size_t rank = report_.triples_checked++;
    if (margin < report_.worst_margin) {
      report_.worst_margin = margin;
      worst_ = w;
    }
    if (margin < -options_.tol) {
      ++report_.violation_count;
      violations_.add(margin, rank, w);
    }
  }

  SubstitutesReport finish() {
    report_.satisfied = report_.violation_count == 0;
    if (report_.triples_checked == 0) report_.worst_margin = 0.0;
    if (report_.satisfied) {
      if (report_.triples_checked > 0) report_.witnesses.push_back(worst_);
    } else {
      report_.witnesses = violations_.take();
    }
    return std::move(report_);
  }

 private:
  CheckOptions options_;
  SubstitutesReport report_;
  Witness worst_;
  detail::BoundedWorst<Witness> violations_;
};

SubstitutesReport check_projective_impl(const InfoStructure& info,
                                        const CheckOptions& options,
                                        bool restricted) {
  detail::require_enumerable(info, options.enumeration_cap);
  const detail::PredictionTable table(info);
  const auto subsets = enumerate_subsets(info.n_experts());
  ReportBuilder builder(
      restricted ? Condition::kProjectiveRestricted : Condition::kProjective, options);
  for (SignalSubset a : subsets) {
    for (SignalSubset b : subsets) {
      for (int i = 0; i < info.n_experts(); ++i) {
        if (restricted && !a.contains(i)) continue;
        builder.add({a, b, i, table.prediction_error(a, b),
                     table.prediction_error(a.with(i), b.with(i))});
      }
    }
  }
  return builder.finish();
}

}  // namespace

SubstitutesReport check_weak(const InfoStructure& info, const CheckOptions& options) {
  detail::require_enumerable(info, options.enumeration_cap);
  const detail::PredictionTable table(info);
  const auto subsets = enumerate_subsets(info.n_experts());
  ReportBuilder builder(Condition::kWeak, options);
  for (SignalSubset a : subsets) {
    for (SignalSubset b : subsets) {
      if (!a.is_subset_of(b)) continue;
      for (int i = 0; i < info.n_experts(); ++i) {
        const double lhs = table.belief_value(a.with(i)) - table.belief_value(a);
        const double rhs = table.belief_value(b.with(i)) - table.belief_value(b);
        builder.add({a, b, i, lhs, rhs});
      }
    }
  }
  return builder.finish();
}

SubstitutesReport check_projective(const InfoStructure& info, const CheckOptions& options) {
  return check_projective_impl(info, options, false);
}

SubstitutesReport check_projective_restricted(const InfoStructure& info,
                                              const CheckOptions& options) {
  return check_projective_impl(info, options, true);
}

SubstitutesReport check(const InfoStructure& info, Condition condition,
                        const CheckOptions& options) {
  switch (condition) {
    case Condition::kWeak: return check_weak(info, options);
    case Condition::kProjective: return check_projective(info, options);
    case Condition::kProjectiveRestricted: return check_projective_restricted(info, options);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown substitutes condition");
}

Witness recompute_witness(const InfoStructure& info, Condition condition,
                          SignalSubset a, SignalSubset b, int expert) {
  info.require_valid(a | b | SignalSubset::single(expert));
  if (condition == Condition::kWeak) {
    auto v = [&](SignalSubset s) { return value(info, conditional_expectation(info, s)); };
    return {a, b, expert, v(a.with(expert)) - v(a), v(b.with(expert)) - v(b)};
  }
  const SignalSubset a2 = a.with(expert);
  const SignalSubset b2 = b.with(expert);
  const double lhs = mean_squared_distance(info, conditional_expectation(info, b),
                                           prediction(info, b, a));
  const double rhs = mean_squared_distance(info, conditional_expectation(info, b2),
                                           prediction(info, b2, a2));
  return {a, b, expert, lhs, rhs};
}

}  // namespace ragg
