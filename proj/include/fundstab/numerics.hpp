#pragma once

#include <cmath>
#include <stdexcept>

namespace fundstab::detail {

// Bisection for a root of f on [lo, hi], requiring f(lo) <= 0 <= f(hi).
// Stops once |f(mid)| <= residual_tol (or after max_iter halvings).
template <class F>
double bisect_root(F&& f, double lo, double hi, double residual_tol = 1e-12,
                   int max_iter = 200) {
  if (f(lo) > 0.0 || f(hi) < 0.0)
    throw std::domain_error("bisect_root: endpoints do not bracket a root");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::fabs(fm) <= residual_tol) return mid;
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Smallest x in [lo, hi] with pred(x) true, for a pred that is monotone
// false-to-true on the interval with pred(hi) true. Returns a point on the
// true side, within xtol of the switching boundary.
template <class P>
double bisect_first_true(P&& pred, double lo, double hi, double xtol = 1e-10) {
  if (pred(lo)) return lo;
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace fundstab::detail
