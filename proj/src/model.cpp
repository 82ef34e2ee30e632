#include "fundstab/model.hpp"

#include <cmath>

namespace fundstab {

namespace {
constexpr double kBoundarySlack = 1e-12;
}

AssetFraction::AssetFraction(double v) : v_(v) {
  if (!std::isfinite(v) || v < -kBoundarySlack || v > 1.0 + kBoundarySlack)
    throw std::domain_error("asset fraction must lie in [0, 1]");
  if (v_ < 0.0) v_ = 0.0;
  if (v_ > 1.0) v_ = 1.0;
}

LiquidityParams::LiquidityParams(double theta, double delta, double exponent_cap)
    : theta(theta), delta(delta) {
  if (!std::isfinite(theta) || !std::isfinite(delta) || theta < 0.0 || delta < 0.0)
    throw std::domain_error("liquidity exponents must be finite and non-negative");
  if (theta > exponent_cap || delta > exponent_cap)
    throw std::domain_error("liquidity exponent exceeds the supported cap");
}

// pow(0, 0) == 1 is wanted here: a zero exponent means every interior asset is
// fully discounted / ineligible. Capacities below use the integral forms,
// which are 0 at a zero exponent; those, not the pointwise curves, drive the
// downstream logic.
double haircut(AssetFraction x, const LiquidityParams& p) {
  return std::pow(x.value(), p.delta);
}

double fire_sale_discount(AssetFraction x, const LiquidityParams& p) {
  return std::pow(x.value(), p.theta);
}

double pledge_capacity(const LiquidityParams& p) { return p.delta / (p.delta + 1.0); }

double fire_sale_capacity(const LiquidityParams& p) { return p.theta / (p.theta + 1.0); }

double fire_sale_loss(AssetFraction z, const LiquidityParams& p) {
  return std::pow(z.value(), p.theta + 1.0) / (p.theta + 1.0);
}

double liquidity_generated(AssetFraction z, const LiquidityParams& p) {
  const double zv = z.value();
  return p.delta / (p.delta + 1.0) + std::pow(zv, p.delta + 1.0) / (p.delta + 1.0) -
         std::pow(zv, p.theta + 1.0) / (p.theta + 1.0);
}

double calibrate_delta_from_average_haircut(double avg_haircut) {
  if (!std::isfinite(avg_haircut) || avg_haircut <= 0.0 || avg_haircut >= 1.0)
    throw std::domain_error("average haircut must lie strictly between 0 and 1");
  return 1.0 / avg_haircut - 1.0;
}

double calibrate_theta_from_default_cost(double default_cost) {
  if (!std::isfinite(default_cost) || default_cost <= 0.0 || default_cost >= 1.0)
    throw std::domain_error("default cost must lie strictly between 0 and 1");
  return 1.0 / default_cost - 1.0;
}

LiquidationPlan make_liquidation_plan(AssetFraction z, const LiquidityParams& p) {
  return {z, liquidity_generated(z, p), fire_sale_loss(z, p)};
}

}  // namespace fundstab
