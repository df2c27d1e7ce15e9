#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scto/spline.hpp"
#include "scto/torus.hpp"

// C^1 grid functions on the circle: probability densities, their BV/regularity
// functionals, support arcs and circular Wasserstein distances. The same class
// also carries signed grid functions (iterate differences, test functions for
// the Lasota-Yorke diagnostic).

namespace scto {

constexpr double kMassTol = 1e-10;
constexpr double kSupportFloor = 1e-12;

class GridDensity {
 public:
  /// Grid function from node values at {j/M}. M must be a power of two >= 8.
  explicit GridDensity(std::vector<double> values);

  static GridDensity constant(int resolution, double value = 1.0);
  /// 1 + a sin(2 pi k x) + b cos(2 pi k x)
  static GridDensity trig(int resolution, double a, double b, int k);
  /// Normalized C^2 bump (1 + cos(pi (x-center)/radius))^2 on the arc
  /// [center - radius, center + radius], zero elsewhere.
  static GridDensity bump(int resolution, CirclePoint center, double radius);
  static GridDensity from_function(int resolution, const std::function<double(double)>& f);

  int resolution() const { return m_; }
  const std::vector<double>& values() const { return spline_.values(); }
  const PeriodicSpline& spline() const { return spline_; }

  double evaluate(CirclePoint x) const { return spline_.eval(x.value); }
  double evaluate_deriv(CirclePoint x) const { return spline_.deriv(x.value); }
  /// Spline value, snapped to exactly 0 on cells whose both endpoint node
  /// values are 0 (keeps compact supports from leaking through spline tails).
  double evaluate_snapped(double x) const;
  double evaluate_deriv_snapped(double x) const;
  double node_deriv(int j) const { return spline_.node_deriv(j); }

  /// Periodic trapezoid mass = mean of node values.
  double mass() const;

 private:
  int m_;
  PeriodicSpline spline_;
};

struct NormReport {
  double l1 = 0.0;
  double variation = 0.0;
  double bv = 0.0;
  double sup_deriv = 0.0;
  double lip_deriv = 0.0;
};

/// l1 = int |f|, variation = int |f'| (trapezoid), bv = l1 + variation,
/// sup_deriv = max node |f'|, lip_deriv = max |f'_{j+1}-f'_j| / h.
NormReport norms(const GridDensity& d);

struct MembershipSpec {
  double R = 1.0;  // variation bound
  double S = 1.0;  // derivative sup bound
  double c = 1.0;  // derivative Lipschitz bound
};

struct MembershipReport {
  bool ok = false;
  double var_margin = 0.0;  // R - variation
  double sup_margin = 0.0;  // S - sup_deriv
  double lip_margin = 0.0;  // c - lip_deriv
};

MembershipReport check_membership(const GridDensity& d, const MembershipSpec& spec);

/// Smallest arc containing the nodes above floor_rel * max(f), padded by one
/// grid cell per side. Throws if the above-floor nodes span the circle.
Arc support_arc(const GridDensity& d, double floor_rel = kSupportFloor);

/// Circular W1 distance: min over a vertical shift a of int |F_d - F_e - a|.
double wasserstein1(const GridDensity& d, const GridDensity& e);
double wasserstein_to_dirac(const GridDensity& d, CirclePoint x);
/// W1 between an empirical measure (equal atoms) and a grid density.
double wasserstein1_empirical(std::vector<CirclePoint> points, const GridDensity& d);

/// Rescale so the quadrature mass is 1. Inputs already within 1e-15 of unit
/// mass are returned unchanged, which makes the operation idempotent.
GridDensity normalize(const GridDensity& d);

/// n i.i.d. draws by inverse CDF of the piecewise-linear node interpolant,
/// deterministic in the seed (counter-based uniforms).
std::vector<CirclePoint> sample(const GridDensity& d, std::size_t n, std::uint64_t seed);

/// Spline resampling onto a (finer or coarser) grid.
GridDensity resample(const GridDensity& d, int resolution);

/// BV norm of the difference, resampling to the finer grid when needed.
double bv_distance(const GridDensity& a, const GridDensity& b);

/// Node values clamped at 0 from below (spline-undershoot repair).
GridDensity clamp_nonnegative(const GridDensity& d);

}  // namespace scto
