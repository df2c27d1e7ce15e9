#pragma once

#include <vector>

// Periodic cubic spline interpolation on the uniform grid {j/M} of the circle.

namespace scto {

class PeriodicSpline {
 public:
  PeriodicSpline() = default;
  explicit PeriodicSpline(std::vector<double> node_values);

  /// Value of the interpolant at any real x (1-periodic). Exact at nodes.
  double eval(double x) const;
  double deriv(double x) const;
  double second(double x) const;

  /// Interpolant derivative at node j.
  double node_deriv(int j) const;

  int resolution() const { return m_; }
  const std::vector<double>& values() const { return y_; }
  const std::vector<double>& moments() const { return sig_; }

 private:
  void locate(double x, int& j, double& tau) const;

  int m_ = 0;
  std::vector<double> y_;    // node values
  std::vector<double> sig_;  // second derivatives at nodes
};

}  // namespace scto
