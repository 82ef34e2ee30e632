#pragma once

#include <string>

#include "fundstab/model.hpp"

namespace fundstab {

// Liability mix of a unit balance sheet; the three shares sum to one.
// Deposits are the residual: s = 1 - equity - term.
struct LiabilityStructure {
  double equity;    // e
  double term;      // t
  double deposits;  // s

  LiabilityStructure(double equity, double term);
  static LiabilityStructure from_components(double equity, double term, double deposits);
};

// The stated equity footnote: e is expected to stay below the largest loss a
// full liquidation can produce, 1/(theta+1). A breach is a warning, not an
// error; this helper reports it.
bool equity_cap_exceeded(const LiabilityStructure& l, const LiquidityParams& p,
                         double tol = kDefaultTolerance);

enum class DepositorAction { Keep, Run };

// Depositor 1's payoffs under the four pure-strategy profiles of the
// symmetric two-depositor game. Depositor 2's payoffs are the mirror image.
struct GamePayoffs {
  double u_kk;  // both keep
  double u_rk;  // 1 runs, 2 keeps
  double u_kr;  // 1 keeps, 2 runs
  double u_rr;  // both run
  double epsilon;

  double payoff(DepositorAction mine, DepositorAction other) const;
  // Keeping strictly better than running against either opposing action.
  bool strict_no_run() const;
};

// Payoff table for the frozen-market case (theta = 0), where all liquidity
// comes from pledging. Only modelled there; other regimes throw.
GamePayoffs payoff_matrix_cb_only(const LiabilityStructure& l, const LiquidityParams& p,
                                  double eps, double tol = kDefaultTolerance);

// No-run equilibrium tests. Weak inequalities with an absolute tolerance;
// the strictness of the underlying game comes from the transaction cost.
bool is_snnr_cb_only(const LiabilityStructure& l, const LiquidityParams& p,
                     double tol = kDefaultTolerance);

// Only valid when no collateral is eligible (delta = 0); throws otherwise.
bool is_snnr_fire_sale_only(const LiabilityStructure& l, const LiquidityParams& p,
                            double tol = kDefaultTolerance);

// General case: feasible to cover a one-sided run from fire sales capped by
// equity plus credit against the remaining book.
bool is_snnr_mixed(const LiabilityStructure& l, const LiquidityParams& p,
                   double tol = kDefaultTolerance);

enum class Regime { CentralBankOnly, FireSaleOnly, Mixed };

enum class RegimeReason {
  DeltaAtLeastTheta,         // pledging dominates selling asset by asset
  BufferCoversHalfDeposits,  // pledge capacity alone stops a one-sided run
  NoCollateralEligible,      // delta = 0, fire sales are the only source
  BothSourcesNeeded
};

struct RegimeClassification {
  Regime regime;
  RegimeReason reason;
};

RegimeClassification classify_regime(const LiabilityStructure& l, const LiquidityParams& p,
                                     double tol = kDefaultTolerance);

std::string to_string(Regime r);
std::string to_string(RegimeReason r);

// Largest liquidity raisable when fire-sale losses must stay within equity.
struct MaxLiquidity {
  double cutoff;     // chosen sale tranche
  double liquidity;  // cash raised at that cutoff
};

MaxLiquidity max_feasible_liquidity(double equity, const LiquidityParams& p);

// Regime-appropriate no-run verdict for an arbitrary parameter point.
bool snnr_holds(const LiabilityStructure& l, const LiquidityParams& p,
                double tol = kDefaultTolerance);

}  // namespace fundstab
