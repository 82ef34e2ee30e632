#pragma once

#include <stdexcept>

namespace fundstab {

// Absolute tolerance used for all constraint-boundary comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

// Exponents above this are rejected as unrepresentative (overflow guard).
inline constexpr double kMaxExponent = 1e6;

// Asked about a parameter regime the model does not cover.
class unsupported_regime : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed run configuration (bad axis names, steps, files, ...).
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A fraction of the bank's unit asset book. Implicit construction is
// deliberate: fractions flow in from plain arithmetic everywhere. Values a
// hair outside [0,1] (within 1e-12) are clamped, anything else is rejected.
class AssetFraction {
 public:
  AssetFraction(double v);
  double value() const { return v_; }
  operator double() const { return v_; }

 private:
  double v_;
};

// Market-liquidity exponent (theta) and collateral-eligibility exponent
// (delta). Higher is more liquid / more pledgeable.
struct LiquidityParams {
  double theta;
  double delta;
  LiquidityParams(double theta, double delta, double exponent_cap = kMaxExponent);
};

// Central-bank haircut on asset x: the unpledgeable value share, x^delta.
double haircut(AssetFraction x, const LiquidityParams& p);

// Fire-sale discount on asset x: the value share lost when sold, x^theta.
double fire_sale_discount(AssetFraction x, const LiquidityParams& p);

// Credit obtainable by pledging the whole book: delta/(delta+1).
double pledge_capacity(const LiquidityParams& p);

// Cash raised by liquidating the whole book: theta/(theta+1).
double fire_sale_capacity(const LiquidityParams& p);

// Loss from selling the most liquid tranche [0, z]: z^(theta+1)/(theta+1).
double fire_sale_loss(AssetFraction z, const LiquidityParams& p);

// Total liquidity from selling [0, z] and pledging the rest.
double liquidity_generated(AssetFraction z, const LiquidityParams& p);

// delta implied by the average haircut seen when pledging the whole book.
double calibrate_delta_from_average_haircut(double avg_haircut);

// theta implied by the value share destroyed in a full liquidation.
double calibrate_theta_from_default_cost(double default_cost);

// A liquidation decision with its recomputable consequences.
struct LiquidationPlan {
  AssetFraction cutoff;  // tranche [0, cutoff] is sold outright
  double liquidity;      // total cash raised (sale proceeds + credit)
  double loss;           // fire-sale value destroyed
};

LiquidationPlan make_liquidation_plan(AssetFraction z, const LiquidityParams& p);

}  // namespace fundstab
