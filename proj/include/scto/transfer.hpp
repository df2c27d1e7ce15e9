#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scto/coupling.hpp"
#include "scto/density.hpp"
#include "scto/maps.hpp"

// The self-consistent transfer operator F_eps(f) = P_T P_{Phi_f} f, its
// fixed-point solver, the eps sweep, and the Lasota-Yorke diagnostic.

namespace scto {

/// Raw node image of P_T u (no clamping, no renormalization). Works on signed
/// grid functions; compact supports are evaluated with zero-cell snapping.
std::vector<double> apply_transfer_T(const ExpandingMap& map, const GridDensity& u);

/// Raw node image of P_Phi u.
std::vector<double> apply_transfer_phi(const CouplingField& field, const GridDensity& u);

/// P_T with renormalization (mass-drift repair policy).
GridDensity pushforward_T(const ExpandingMap& map, const GridDensity& d);

/// Single-branch pushforward under the coupling diffeomorphism, renormalized.
GridDensity pushforward_phi(const CouplingField& field, const GridDensity& d);

/// One application of F_eps: build the coupling field from (eps, d), push
/// through Phi then T, clamp spline undershoot, renormalize.
GridDensity step(double eps, const GridDensity& d, const ExpandingMap& map);

/// The closed-form derivative of F_eps(f): branch sums of f'/(F')^2 and
/// f F''/(F')^3, evaluated at all nodes (cross-validation profile).
std::vector<double> image_derivative_formula(double eps, const GridDensity& d,
                                             const ExpandingMap& map);

struct FixedPointReport {
  int iterations = 0;
  std::vector<double> bv_distances;  // ||f_{k+1} - f_k||_BV per iteration
  double residual = 0.0;             // ||F_eps(f*) - f*||_BV
  double gamma_est = 0.0;            // geometric rate from the tail of the run
  bool converged = false;
};

std::pair<GridDensity, FixedPointReport> fixed_point(double eps, const GridDensity& d0,
                                                     const ExpandingMap& map,
                                                     double tol = 1e-9,
                                                     int max_iter = 500);

struct SweepCell {
  double eps = 0.0;
  FixedPointReport report;
};

struct SweepReport {
  std::vector<double> eps_grid;
  std::vector<GridDensity> fixed_densities;
  std::vector<SweepCell> cells;
  std::vector<std::optional<double>> ratios;  // ||f*_{i+1} - f*_i||_BV / delta_eps
  std::optional<double> K_est;                // max finite ratio
  double warm_cold_dev = 0.0;  // warm-start independence probe on the last cell
};

/// fixed_point per eps, warm-started from the previous cell; one cell is
/// re-run cold-started to confirm warm-start independence.
SweepReport sweep_epsilon(const std::vector<double>& eps_grid, const GridDensity& d0,
                          const ExpandingMap& map, double tol = 1e-9,
                          int max_iter = 500);

struct LasotaYorkeReport {
  double lhs = 0.0;    // ||P_{F_f} u||_BV
  double rhs = 0.0;    // alpha ||u||_BV + (1 + Dtilde) ||u||_1
  double alpha = 0.0;  // 1 / (omega (1 - eps))
  double dtilde = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;
};

/// Numeric instantiation of the Lasota-Yorke inequality for a zero-mean test
/// function u, with the coupling built from the density d.
LasotaYorkeReport lasota_yorke_check(const ExpandingMap& map, double eps,
                                     const GridDensity& d, const GridDensity& u);

}  // namespace scto
