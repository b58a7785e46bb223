#include "ragg/revelation.hpp"

#include "bounded_worst.hpp"
#include "prediction_table.hpp"

namespace ragg {

RevelationReport check_revelation_dominance(const InfoStructure& info,
                                            const RevelationOptions& options) {
  detail::require_enumerable(info, options.enumeration_cap);
  const detail::PredictionTable table(info);
  const auto subsets = enumerate_subsets(info.n_experts());

  RevelationReport report;
  report.tolerance = options.tol;
  detail::BoundedWorst<RevelationWitness> violations(options.witness_cap);
  for (int i = 0; i < info.n_experts(); ++i) {
    for (SignalSubset team : subsets) {
      if (!team.contains(i)) continue;
      for (SignalSubset revealers : subsets) {
        if (revealers.contains(i)) continue;
        const RevelationWitness w{i, team, revealers,
                                  table.prediction_error(team, revealers.with(i)),
                                  table.prediction_error(team, revealers)};
        const std::size_t rank = report.configurations_checked++;
        const double excess = w.loss_reveal - w.loss_withhold;
        if (excess > options.tol) {
          ++report.violation_count;
          violations.add(-excess, rank, w);
        }
      }
    }
  }
  report.dominant = report.violation_count == 0;
  report.witnesses = violations.take();
  return report;
}

}  // namespace ragg
