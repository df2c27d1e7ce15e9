#pragma once

#include <cstdint>
#include <vector>

#include "scto/density.hpp"
#include "scto/maps.hpp"
#include "scto/torus.hpp"

// Finite-N mean-field system: N sites coupled through the empirical average of
// the sawtooth kernel, evolved in lockstep with the continuum operator for
// cross-validation.

namespace scto {

struct ParticleEnsemble {
  std::vector<CirclePoint> positions;
  std::size_t size() const { return positions.size(); }
};

/// Per-site coupling sums S_i = sum_j g(x_j - x_i), direct O(N^2).
std::vector<double> coupling_sums_naive(const std::vector<CirclePoint>& xs);
/// Same sums via sorting and prefix counts, O(N log N); agrees with the
/// direct loop up to its own N * eps_machine summation rounding.
std::vector<double> coupling_sums_fast(const std::vector<CirclePoint>& xs);

/// Synchronous update x_i <- T(x_i + (eps/N) S_i); all sums read the pre-step
/// configuration. The fast path is used above N = 4096.
ParticleEnsemble particle_step(const ParticleEnsemble& ens, const ExpandingMap& map,
                               double eps);

/// Circular diameter of the ensemble (arc-hull length; 1 if no proper hull).
double ensemble_diameter(const ParticleEnsemble& ens);

struct ParticleRunResult {
  std::vector<double> w1;        // per step: W1(empirical, continuum density)
  std::vector<double> diameter;  // per step: ensemble diameter
  std::uint64_t seed = 0;
};

/// Samples N particles from f0, evolves ensemble and continuum in lockstep for
/// n_steps, and reports the per-step empirical-vs-continuum W1 distance.
ParticleRunResult empirical_vs_continuum(const GridDensity& f0, const ExpandingMap& map,
                                         double eps, int n_steps, std::size_t n_particles,
                                         std::uint64_t seed);

}  // namespace scto
