#include "scto/synchronization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scto/transfer.hpp"

namespace scto {

SyncHistory evolve_tracking(double eps, const GridDensity& d0, const ExpandingMap& map,
                            int n, double support_floor) {
  const double thresh = 1.0 - 1.0 / map.Omega;
  if (!(eps > thresh)) {
    std::ostringstream os;
    os << "hypothesis violated: requires eps > 1 - 1/Omega = " << thresh
       << ", got eps = " << eps;
    throw std::invalid_argument(os.str());
  }
  if (!(eps < 1.0)) throw std::invalid_argument("hypothesis violated: requires eps < 1");

  GridDensity f = normalize(clamp_nonnegative(d0));
  Arc a0 = support_arc(f, support_floor);  // throws "support not proper" if (F') fails
  if (!(a0.length < 0.5)) {
    std::ostringstream os;
    os << "hypothesis violated: initial support length " << a0.length
       << " is not below 1/2 (property (F'))";
    throw std::invalid_argument(os.str());
  }

  SyncHistory h;
  h.eps = eps;
  h.q = map.Omega * (1.0 - eps);
  h.densities.push_back(f);
  h.support_arcs.push_back(a0);
  h.stop_reason = "completed";

  const double floor_len = 8.0 / f.resolution();
  for (int k = 0; k < n; ++k) {
    if (h.support_arcs.back().length < floor_len) {
      h.stop_reason = "resolution floor";
      break;
    }
    h.fields.emplace_back(eps, h.densities.back());
    GridDensity mid(apply_transfer_phi(h.fields.back(), h.densities.back()));
    GridDensity img(apply_transfer_T(map, mid));
    GridDensity fn = normalize(clamp_nonnegative(img));
    h.densities.push_back(fn);
    h.support_arcs.push_back(support_arc(fn, support_floor));
    ++h.steps_taken;
  }
  return h;
}

CirclePoint reconstruct_xstar(const SyncHistory& history, const ExpandingMap& map) {
  if (history.steps_taken < 1)
    throw std::invalid_argument("reconstruct_xstar: history has no steps");
  const int last = history.steps_taken;
  if (!(history.support_arcs[last].length < history.support_arcs[0].length))
    throw std::invalid_argument("reconstruct_xstar: support did not contract");

  const double cell = 1.0 / history.densities[0].resolution();
  CirclePoint x = arc_midpoint(history.support_arcs[last]);
  for (int k = last - 1; k >= 0; --k) {
    // one-cell slack around the recorded arc for grid rounding
    Arc slack{wrap(history.support_arcs[k].start.value - cell),
              history.support_arcs[k].length + 2.0 * cell};
    CirclePoint chosen;
    int hits = 0;
    for (CirclePoint cand : inverse_branches(map, x)) {
      if (arc_contains(slack, cand)) {
        chosen = cand;
        ++hits;
      }
    }
    if (hits != 1) {
      std::ostringstream os;
      os << "reconstruct_xstar: branch ambiguity at step " << k << " (" << hits
         << " preimages in the recorded support arc)";
      throw std::runtime_error(os.str());
    }
    x = chosen;
  }
  return x;
}

std::vector<double> wasserstein_trajectory(const SyncHistory& history, CirclePoint xstar,
                                           const ExpandingMap& map) {
  std::vector<double> w1;
  w1.reserve(history.densities.size());
  CirclePoint orbit = xstar;
  for (std::size_t n = 0; n < history.densities.size(); ++n) {
    if (n > 0) orbit = map.apply(orbit);
    w1.push_back(wasserstein_to_dirac(history.densities[n], orbit));
  }
  return w1;
}

}  // namespace scto
