#pragma once

#include <optional>

#include "fundstab/model.hpp"
#include "fundstab/optimizer.hpp"

namespace fundstab {

// A market-liquidity deterioration: theta drops while the collateral
// framework delta (and the funding rates) start unchanged.
struct Shock {
  double theta_pre;
  double theta_post;  // weakly below theta_pre
  double delta_pre;
  FundingRates rates;
  Shock(double theta_pre, double theta_post, double delta_pre, FundingRates rates);
};

struct PolicyOptions {
  double delta_max = 5.0;  // search ceiling; anything >= 1 is already free funding
  // When set, candidate deltas are scanned on this grid (ascending) and the
  // pre-shock structure is quoted to the nearest 0.01, emulating a coarse
  // published table rather than the full-precision optimum.
  std::optional<double> delta_grid;
  double tol = kDefaultTolerance;
};

// Smallest delta restoring the pre-shock funding cost after the shock.
double delta_restore_rate(const Shock& sh, const PolicyOptions& opts = {});

// Smallest delta whose post-shock optimum is component-wise no more demanding
// than the pre-shock structure (no more term debt, no more equity, no fewer
// deposits). Empty when nothing at or below delta_max dominates.
std::optional<double> delta_dominating_structure(const Shock& sh,
                                                 const PolicyOptions& opts = {});

// Smallest delta under which the unchanged pre-shock structure stays
// run-proof (the sale cutoff may be re-chosen freely).
double delta_min_feasible(const Shock& sh, const PolicyOptions& opts = {});

// Same search for an arbitrary structure: smallest delta making (equity,
// term) run-proof at the given market liquidity.
double min_delta_for_no_run(double equity, double term, double theta,
                            const PolicyOptions& opts = {});

struct PolicyResponse {
  OptimalFunding baseline;         // optimum under (theta_pre, delta_pre)
  double crisis_cost_unmitigated;  // optimal cost at (theta_post, delta_pre)
  double delta_restore_rate;
  std::optional<double> delta_dominating_structure;
  double delta_min_feasible;
};

PolicyResponse policy_report(const Shock& sh, const PolicyOptions& opts = {});

}  // namespace fundstab
