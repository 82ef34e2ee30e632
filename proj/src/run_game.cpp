#include "fundstab/run_game.hpp"

#include <cmath>

namespace fundstab {

namespace {
constexpr double kShareSlack = 1e-12;
}

LiabilityStructure::LiabilityStructure(double equity, double term)
    : equity(equity), term(term), deposits(0.0) {
  if (!std::isfinite(equity) || !std::isfinite(term) || equity < -kShareSlack ||
      term < -kShareSlack || equity + term > 1.0 + kShareSlack)
    throw std::domain_error("liability shares must be non-negative and sum to at most one");
  if (this->equity < 0.0) this->equity = 0.0;
  if (this->term < 0.0) this->term = 0.0;
  deposits = 1.0 - this->equity - this->term;
  if (deposits < 0.0) deposits = 0.0;
}

LiabilityStructure LiabilityStructure::from_components(double equity, double term,
                                                       double deposits) {
  if (!std::isfinite(deposits) || deposits < -kShareSlack ||
      std::fabs(equity + term + deposits - 1.0) > kShareSlack)
    throw std::domain_error("liability components must be non-negative and sum to one");
  return LiabilityStructure(equity, term);
}

bool equity_cap_exceeded(const LiabilityStructure& l, const LiquidityParams& p, double tol) {
  return l.equity > 1.0 / (p.theta + 1.0) + tol;
}

double GamePayoffs::payoff(DepositorAction mine, DepositorAction other) const {
  if (mine == DepositorAction::Keep)
    return other == DepositorAction::Keep ? u_kk : u_kr;
  return other == DepositorAction::Keep ? u_rk : u_rr;
}

bool GamePayoffs::strict_no_run() const { return u_kk > u_rk && u_kr > u_rr; }

GamePayoffs payoff_matrix_cb_only(const LiabilityStructure& l, const LiquidityParams& p,
                                  double eps, double tol) {
  if (std::fabs(p.theta) > tol)
    throw unsupported_regime(
        "the payoff table is only modelled for a frozen fire-sale market (theta = 0)");
  const double s = l.deposits;
  if (!(eps > 0.0) || !(eps < s / 20.0))
    throw std::domain_error("transaction cost must satisfy 0 < eps < deposits/20");

  const double buffer = pledge_capacity(p);
  GamePayoffs g{};
  g.epsilon = eps;
  g.u_kk = s / 2.0;
  // Boundary ties go to the lower-numbered case.
  if (s <= buffer) {
    // (1) credit covers even a joint run
    g.u_rk = s / 2.0 - eps;
    g.u_kr = s / 2.0;
    g.u_rr = s / 2.0 - eps;
  } else if (s / 2.0 <= buffer) {
    // (2) credit covers a one-sided run only; joint runners split the buffer
    g.u_rk = s / 2.0 - eps;
    g.u_kr = s / 2.0;
    g.u_rr = buffer / 2.0;
  } else {
    // (3) buffer short even against a lone runner, who drains it; the keeper
    // is left with nothing
    g.u_rk = buffer;
    g.u_kr = 0.0;
    g.u_rr = buffer / 2.0;
  }
  return g;
}

bool is_snnr_cb_only(const LiabilityStructure& l, const LiquidityParams& p, double tol) {
  return pledge_capacity(p) >= l.deposits / 2.0 - tol;
}

bool is_snnr_fire_sale_only(const LiabilityStructure& l, const LiquidityParams& p,
                            double tol) {
  if (std::fabs(p.delta) > tol)
    throw unsupported_regime("fire-sale-only test requires delta = 0");
  const double half = l.deposits / 2.0;
  if (half > fire_sale_capacity(p) + tol) return false;
  const double loss = std::pow(half, p.theta + 1.0) / (p.theta + 1.0);
  return l.equity >= loss - tol;
}

MaxLiquidity max_feasible_liquidity(double equity, const LiquidityParams& p) {
  if (!(equity >= 0.0)) throw std::domain_error("equity must be non-negative");
  if (p.theta <= p.delta) return {0.0, pledge_capacity(p)};
  // liquidity is non-decreasing in the cutoff here, so push the cutoff to the
  // point where the sale loss exhausts equity (or the whole book runs out)
  const double z = std::min(1.0, std::pow((p.theta + 1.0) * equity, 1.0 / (p.theta + 1.0)));
  return {z, liquidity_generated(z, p)};
}

bool is_snnr_mixed(const LiabilityStructure& l, const LiquidityParams& p, double tol) {
  return max_feasible_liquidity(l.equity, p).liquidity >= l.deposits / 2.0 - tol;
}

RegimeClassification classify_regime(const LiabilityStructure& l, const LiquidityParams& p,
                                     double tol) {
  if (p.delta >= p.theta - tol) return {Regime::CentralBankOnly, RegimeReason::DeltaAtLeastTheta};
  if (pledge_capacity(p) >= l.deposits / 2.0 - tol)
    return {Regime::CentralBankOnly, RegimeReason::BufferCoversHalfDeposits};
  if (p.delta <= tol) return {Regime::FireSaleOnly, RegimeReason::NoCollateralEligible};
  return {Regime::Mixed, RegimeReason::BothSourcesNeeded};
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::CentralBankOnly: return "CentralBankOnly";
    case Regime::FireSaleOnly: return "FireSaleOnly";
    case Regime::Mixed: return "Mixed";
  }
  return "?";
}

std::string to_string(RegimeReason r) {
  switch (r) {
    case RegimeReason::DeltaAtLeastTheta: return "DeltaAtLeastTheta";
    case RegimeReason::BufferCoversHalfDeposits: return "BufferCoversHalfDeposits";
    case RegimeReason::NoCollateralEligible: return "NoCollateralEligible";
    case RegimeReason::BothSourcesNeeded: return "BothSourcesNeeded";
  }
  return "?";
}

bool snnr_holds(const LiabilityStructure& l, const LiquidityParams& p, double tol) {
  switch (classify_regime(l, p, tol).regime) {
    case Regime::CentralBankOnly: return is_snnr_cb_only(l, p, tol);
    case Regime::FireSaleOnly: return is_snnr_fire_sale_only(l, p, tol);
    case Regime::Mixed: return is_snnr_mixed(l, p, tol);
  }
  return false;
}

}  // namespace fundstab
