#include "scto/particles.hpp"

#include <algorithm>
#include <cmath>

#include "scto/transfer.hpp"

namespace scto {

std::vector<double> coupling_sums_naive(const std::vector<CirclePoint>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += kernel_g(xs[j].value - xs[i].value);
    out[i] = s;
  }
  return out;
}

std::vector<double> coupling_sums_fast(const std::vector<CirclePoint>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = xs[i].value;
  std::sort(s.begin(), s.end());
  double total = 0.0;
  for (double v : s) total += v;

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = xs[i].value;
    const double t_lo = xi - 0.5, t_hi = xi + 0.5;
    auto lb_lo = std::lower_bound(s.begin(), s.end(), t_lo);
    auto ub_lo = std::upper_bound(lb_lo, s.end(), t_lo);
    auto lb_hi = std::lower_bound(ub_lo, s.end(), t_hi);
    auto ub_hi = std::upper_bound(lb_hi, s.end(), t_hi);
    double cnt_low = static_cast<double>(lb_lo - s.begin());
    double eq_low = static_cast<double>(ub_lo - lb_lo);
    double cnt_high = static_cast<double>(s.end() - ub_hi);
    double eq_high = static_cast<double>(ub_hi - lb_hi);
    // wrap the representative of x_j - x_i into (-1/2, 1/2]; exact half-gaps
    // carry g = 0 and contribute half-integer corrections
    out[i] = (total - static_cast<double>(n) * xi) + cnt_low - cnt_high +
             0.5 * (eq_low - eq_high);
  }
  return out;
}

ParticleEnsemble particle_step(const ParticleEnsemble& ens, const ExpandingMap& map,
                               double eps) {
  const std::size_t n = ens.size();
  std::vector<double> sums =
      n > 4096 ? coupling_sums_fast(ens.positions) : coupling_sums_naive(ens.positions);
  ParticleEnsemble out;
  out.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CirclePoint moved = wrap(ens.positions[i].value + eps / static_cast<double>(n) * sums[i]);
    out.positions[i] = map.apply(moved);
  }
  return out;
}

double ensemble_diameter(const ParticleEnsemble& ens) {
  try {
    return arc_hull(ens.positions).length;
  } catch (const std::invalid_argument&) {
    return 1.0;
  }
}

ParticleRunResult empirical_vs_continuum(const GridDensity& f0, const ExpandingMap& map,
                                         double eps, int n_steps, std::size_t n_particles,
                                         std::uint64_t seed) {
  ParticleRunResult res;
  res.seed = seed;
  GridDensity d = normalize(clamp_nonnegative(f0));
  ParticleEnsemble ens{sample(d, n_particles, seed)};
  res.w1.push_back(wasserstein1_empirical(ens.positions, d));
  res.diameter.push_back(ensemble_diameter(ens));
  for (int k = 0; k < n_steps; ++k) {
    ens = particle_step(ens, map, eps);
    d = step(eps, d, map);
    res.w1.push_back(wasserstein1_empirical(ens.positions, d));
    res.diameter.push_back(ensemble_diameter(ens));
  }
  return res;
}

}  // namespace scto
