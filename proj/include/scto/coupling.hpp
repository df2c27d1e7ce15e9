#pragma once

#include "scto/density.hpp"
#include "scto/spline.hpp"
#include "scto/torus.hpp"

// Mean-field coupling diffeomorphism Phi_{eps,f}(x) = x + eps * G(x) with
// displacement G(x) = int g(y-x) f(y) dy, its closed-form derivatives and its
// inverse.

namespace scto {

/// Displacement profile at the grid nodes, naive O(M^2) quadrature. The
/// integral runs over the lifted window [x-1/2, x+1/2], where the integrand
/// (t-x) f(t) is smooth; the window endpoints are the kernel kinks and carry
/// cancelling trapezoid half-weights.
std::vector<double> displacement_nodes_naive(const GridDensity& f);
/// Same values via prefix sums, O(M). Agrees with the naive path to 1e-10.
std::vector<double> displacement_nodes_fast(const GridDensity& f);

/// One-off displacement at an arbitrary point (kink-aligned trapezoid panels).
double displacement(const GridDensity& f, CirclePoint x);

class CouplingField {
 public:
  /// Precomputes G at all nodes (prefix-sum path above resolution 2048) and
  /// verifies the diffeomorphism safeguard min Phi' > 0 at the nodes.
  CouplingField(double eps, GridDensity source);

  double eps() const { return eps_; }
  const GridDensity& source() const { return source_; }
  const std::vector<double>& displacement_nodes() const { return g_.values(); }

  double displacement(double x) const { return g_.eval(x); }
  double phi_lift(double x) const { return x + eps_ * g_.eval(x); }
  CirclePoint phi(CirclePoint x) const { return wrap(phi_lift(x.value)); }

  /// Closed forms Phi' = 1 + eps (f(x+1/2) - 1), Phi'' = eps f'(x+1/2).
  double phi_prime(double x) const;
  double phi_second(double x) const;

  /// Unique x with Phi(x) = y (safeguarded Newton on the monotone lift).
  CirclePoint phi_inverse(CirclePoint y) const;

 private:
  double eps_;
  GridDensity source_;
  PeriodicSpline g_;
};

}  // namespace scto
