#pragma once

#include <string>
#include <vector>

#include "secbeam/channel.hpp"
#include "secbeam/units.hpp"

namespace secbeam {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Run the full invariant suite against one realization: serialization
/// round trip, pencil bounds, evaluator round trips, null constraints,
/// power accounting, per-alpha orderings, monotonicity, frontier
/// correctness and the first-hop cap. Checks that need m >= 2 are omitted
/// for single-relay realizations.
std::vector<CheckResult> run_invariant_checks(const ChannelRealization& r,
                                              double p_r,
                                              const std::vector<double>& alpha_grid,
                                              RateUnit unit = RateUnit::bits,
                                              std::size_t oracle_trials = 20000);

}  // namespace secbeam
