#include "fundstab/optimizer.hpp"

#include <cmath>
#include <vector>

#include "fundstab/numerics.hpp"

namespace fundstab {

FundingRates::FundingRates(double term_rate, double equity_rate)
    : term_rate(term_rate), equity_rate(equity_rate) {
  if (!std::isfinite(term_rate) || !std::isfinite(equity_rate) || term_rate < 0.0 ||
      equity_rate < term_rate)
    throw std::domain_error("rates must satisfy 0 <= term rate <= equity rate");
}

std::string to_string(Candidate c) {
  switch (c) {
    case Candidate::TrivialZero: return "TrivialZero";
    case Candidate::CornerCBOnly: return "CornerCBOnly";
    case Candidate::ZeroTermRoot: return "ZeroTermRoot";
    case Candidate::InteriorW4: return "InteriorW4";
  }
  return "?";
}

double slack_function(double z, const LiquidityParams& p) {
  const double zv = AssetFraction(z).value();
  return (p.delta - 1.0) / (p.delta + 1.0) +
         2.0 * std::pow(zv, p.delta + 1.0) / (p.delta + 1.0) -
         std::pow(zv, p.theta + 1.0) / (p.theta + 1.0);
}

std::optional<ZeroTermCandidate> solve_zero_term_candidate(const LiquidityParams& p) {
  if (slack_function(0.0, p) > 0.0 || slack_function(1.0, p) < 0.0) return std::nullopt;
  const double z =
      detail::bisect_root([&](double x) { return slack_function(x, p); }, 0.0, 1.0);
  return ZeroTermCandidate{z, fire_sale_loss(z, p)};
}

double interior_cutoff(const LiquidityParams& p, const FundingRates& r) {
  if (p.theta <= p.delta)
    throw unsupported_regime(
        "interior cutoff needs the sale-discount exponent above the haircut exponent");
  const double denom = r.term_rate + r.equity_rate;
  if (denom <= 0.0) throw std::domain_error("interior cutoff needs a positive combined rate");
  const double base = 2.0 * r.term_rate / denom;
  return std::min(1.0, std::pow(base, 1.0 / (p.theta - p.delta)));
}

OptimalFunding solve_analytic(const LiquidityParams& p, const FundingRates& r, double tol) {
  // Pledge capacity already covers half of even an all-deposit balance sheet:
  // free funding, nothing to optimize.
  if (p.delta >= 1.0) return {0.0, 0.0, 1.0, 0.0, 0.0, Candidate::TrivialZero, false};

  struct Entry {
    double t, e, z;
    Candidate label;
  };
  std::vector<Entry> entries;
  entries.push_back({(1.0 - p.delta) / (1.0 + p.delta), 0.0, 0.0, Candidate::CornerCBOnly});

  if (p.theta > p.delta) {
    // Fire sales only generate net liquidity in this half; otherwise the
    // corner (no sales) dominates anything the other candidates could offer.
    if (auto zt = solve_zero_term_candidate(p))
      entries.push_back({0.0, zt->equity, zt->cutoff, Candidate::ZeroTermRoot});
    const double zi = interior_cutoff(p, r);
    const double sl = slack_function(zi, p);
    if (sl <= 0.0) entries.push_back({-sl, fire_sale_loss(zi, p), zi, Candidate::InteriorW4});
  }

  auto cost_of = [&](const Entry& c) { return c.t * r.term_rate + c.e * r.equity_rate; };
  const Entry* best = &entries.front();
  double best_cost = cost_of(*best);
  for (const auto& c : entries) {
    const double cc = cost_of(c);
    if (cc < best_cost - 1e-12) {
      best = &c;
      best_cost = cc;
    } else if (cc <= best_cost + 1e-12) {
      // near-tie: prefer less equity, then less term debt, then smaller cutoff
      const bool wins =
          c.e < best->e - 1e-12 ||
          (std::fabs(c.e - best->e) <= 1e-12 &&
           (c.t < best->t - 1e-12 ||
            (std::fabs(c.t - best->t) <= 1e-12 && c.z < best->z - 1e-12)));
      if (wins) {
        best = &c;
        best_cost = cost_of(c);
      }
    }
  }

  const double t = best->t, e = best->e, z = best->z;
  const double s = 1.0 - t - e;
  if (liquidity_generated(z, p) < s / 2.0 - tol || fire_sale_loss(z, p) > e + tol ||
      t + e > 1.0 + tol)
    throw std::logic_error("selected funding plan violates its own constraints");

  OptimalFunding out{};
  out.term = t;
  out.equity = e;
  out.deposits = s;
  out.cutoff = z;
  out.cost = t * r.term_rate + e * r.equity_rate;
  out.winner = best->label;
  out.equity_cap_warning = e > 1.0 / (p.theta + 1.0) + tol;
  return out;
}

BruteForceResult solve_bruteforce(const LiquidityParams& p, const FundingRates& r,
                                  double step, double tol) {
  if (!(step > 0.0) || step > 0.01 + 1e-15)
    throw std::domain_error("grid step must lie in (0, 0.01]");
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));

  BruteForceResult best{false, 0.0, 0.0, 0.0, 0.0};
  for (int iz = 0; iz <= n; ++iz) {
    const double z = iz * step;
    const double f = liquidity_generated(z, p);
    const double k = fire_sale_loss(z, p);
    // smallest grid equity absorbing the sale loss
    int ie0 = static_cast<int>(std::ceil((k - tol) / step - 1e-12));
    if (ie0 < 0) ie0 = 0;
    for (int ie = ie0; ie <= n; ++ie) {
      const double e = ie * step;
      // smallest grid term share meeting the liquidity constraint
      const double treq = 1.0 - e - 2.0 * f;
      const int it = treq <= tol ? 0 : static_cast<int>(std::ceil((treq - tol) / step - 1e-12));
      if (it > n) continue;
      const double t = it * step;
      if (t + e > 1.0 + tol) continue;
      const double cost = t * r.term_rate + e * r.equity_rate;
      const bool wins =
          !best.feasible || cost < best.cost ||
          (cost == best.cost &&
           (t < best.term || (t == best.term && (e < best.equity ||
                                                 (e == best.equity && z < best.cutoff)))));
      if (wins) best = {true, t, e, z, cost};
    }
  }
  return best;
}

}  // namespace fundstab
