#pragma once

#include <optional>
#include <string>

#include "fundstab/model.hpp"

namespace fundstab {

// Per-unit funding costs. Deposits are free; equity is at least as expensive
// as term debt.
struct FundingRates {
  double term_rate;    // r_t
  double equity_rate;  // r_e
  FundingRates(double term_rate, double equity_rate);
};

// The candidate that won the cost minimization.
enum class Candidate {
  TrivialZero,   // all-deposit funding, already run-proof
  CornerCBOnly,  // no fire sales; term debt sized so credit covers a half-run
  ZeroTermRoot,  // no term debt; equity sized by the liquidity boundary root
  InteriorW4     // both constraints bind at the cost-optimal cutoff
};

std::string to_string(Candidate c);

struct OptimalFunding {
  double term;      // t
  double equity;    // e
  double deposits;  // s = 1 - t - e
  double cutoff;    // z
  double cost;      // t*r_t + e*r_e
  Candidate winner;
  // e exceeded the full-liquidation loss bound 1/(theta+1); reported, not
  // enforced, since the minimization as stated has no such constraint.
  bool equity_cap_warning;
};

// 2*f(z) + k(z) - 1 for the owning parameters: when equity exactly absorbs
// the sale loss k(z) and liquidity exactly covers a half-run, the implied
// term share is -slack_function(z). Roots are zero-term structures; negative
// values leave room for term debt.
double slack_function(double z, const LiquidityParams& p);

// Zero-term structure at a root of the slack function.
struct ZeroTermCandidate {
  double cutoff;
  double equity;
};

// Bisection on [0, 1]; empty when the endpoint signs give no bracket.
std::optional<ZeroTermCandidate> solve_zero_term_candidate(const LiquidityParams& p);

// Cost-optimal cutoff when both constraints bind:
// (2*r_t/(r_t+r_e))^(1/(theta-delta)), clamped to [0, 1].
// Requires theta > delta and a positive combined rate.
double interior_cutoff(const LiquidityParams& p, const FundingRates& r);

// Closed-form minimizer of t*r_t + e*r_e over structures that survive a
// one-sided run (liquidity covers half the deposits, losses within equity).
OptimalFunding solve_analytic(const LiquidityParams& p, const FundingRates& r,
                              double tol = kDefaultTolerance);

// Exhaustive grid check of the same problem, for cross-validation.
struct BruteForceResult {
  bool feasible;
  double term;
  double equity;
  double cutoff;
  double cost;
};

// step must lie in (0, 0.01]; cost grows as 1/step^2.
BruteForceResult solve_bruteforce(const LiquidityParams& p, const FundingRates& r,
                                  double step, double tol = kDefaultTolerance);

}  // namespace fundstab
