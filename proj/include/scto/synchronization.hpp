#pragma once

#include <string>
#include <vector>

#include "scto/coupling.hpp"
#include "scto/density.hpp"
#include "scto/maps.hpp"

// Strong-coupling regime: evolve well-concentrated densities, track supp*
// contraction at rate q = Omega (1 - eps), reconstruct the moving anchor x*
// and measure the Wasserstein collapse onto its T-orbit.

namespace scto {

struct SyncHistory {
  std::vector<GridDensity> densities;     // f_0 .. f_n
  std::vector<Arc> support_arcs;          // supp*(f_k), padded measurement
  std::vector<CouplingField> fields;      // field built on f_k (one per step)
  double eps = 0.0;
  double q = 0.0;  // Omega (1 - eps)
  int steps_taken = 0;
  std::string stop_reason;  // "completed" or "resolution floor"
};

/// n transfer steps with supp* recorded each step. Requires the contraction
/// hypothesis eps > 1 - 1/Omega and an initial support arc shorter than 1/2.
/// Tracking stops early once the arc falls below 8 grid cells.
SyncHistory evolve_tracking(double eps, const GridDensity& d0, const ExpandingMap& map,
                            int n, double support_floor = kSupportFloor);

/// Anchor point x* in supp*(f_0): the final support midpoint pulled back
/// through the T-inverse branch chain selected by membership in the recorded
/// support arcs (the nested-interval construction).
CirclePoint reconstruct_xstar(const SyncHistory& history, const ExpandingMap& map);

/// w1[n] = W1(f_n, dirac at T^n(x*)).
std::vector<double> wasserstein_trajectory(const SyncHistory& history, CirclePoint xstar,
                                           const ExpandingMap& map);

}  // namespace scto
