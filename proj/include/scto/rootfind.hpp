#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace scto {

/// Solve f(x) = target for a strictly increasing f on [lo, hi].
/// Safeguarded Newton: steps falling outside the current bracket are replaced
/// by bisection. Converges to |bracket| <= xtol.
template <typename F, typename DF>
double solve_increasing(const F& f, const DF& df, double lo, double hi,
                        double target, double xtol = 1e-14, int max_iter = 200) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo > 0.0 || fhi < 0.0) {
    // allow tiny numerical slop at the bracket ends
    if (flo > 0.0 && flo < 1e-12) return lo;
    if (fhi < 0.0 && fhi > -1e-12) return hi;
    throw std::runtime_error("solve_increasing: target not bracketed");
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    double fx = f(x) - target;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    if (hi - lo <= xtol) break;
    double d = df(x);
    double xn = (d > 0.0) ? x - fx / d : lo - 1.0;
    if (xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    x = xn;
  }
  return 0.5 * (lo + hi);
}

}  // namespace scto
