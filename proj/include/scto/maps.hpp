#pragma once

#include <functional>
#include <string>
#include <vector>

#include "scto/torus.hpp"

// Site dynamics: C^2 expanding N-fold coverings of the circle with
// orientation-preserving lifts.

namespace scto {

/// An expanding circle map T given through its lift (lift(x+1) = lift(x)+N).
/// omega/Omega/Dmax are the analytic bounds min T', max T', max |T''|;
/// lip_d2 bounds the Lipschitz constant of T''.
struct ExpandingMap {
  std::function<double(double)> lift;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  int degree = 2;
  double omega = 2.0;
  double Omega = 2.0;
  double Dmax = 0.0;
  double lip_d2 = 0.0;
  std::string description;

  CirclePoint apply(CirclePoint x) const { return wrap(lift(x.value)); }
};

/// lift(x) = N x + delta sin(2 pi x), without admissibility checks.
ExpandingMap perturbed_linear_raw(int degree, double delta);

/// As above, but rejects parameters violating omega > 1 or N < omega^2,
/// naming the failed inequality.
ExpandingMap make_perturbed_linear(int degree, double delta);

struct MapCheck {
  std::string name;
  bool pass = false;
  double margin = 0.0;
};

struct MapValidationReport {
  std::vector<MapCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Grid-scan validation of the expansion assumptions: omega > 1, N < omega^2,
/// degree consistency of the lift, positivity of T', and a sampled Lipschitz
/// estimate for T''. Failures are reported, not thrown.
MapValidationReport validate(const ExpandingMap& map, int scan_resolution = 1 << 16);

/// The N solutions of T(x) = y, ascending in [0,1).
std::vector<CirclePoint> inverse_branches(const ExpandingMap& map, CirclePoint y);

}  // namespace scto
