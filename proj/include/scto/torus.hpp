#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Circle arithmetic on T = R/Z: points, arcs, the circular metric and the
// sawtooth coupling kernel g.

namespace scto {

/// A point on the circle, represented by its value in [0,1).
struct CirclePoint {
  double value = 0.0;
};

/// Reduce x mod 1 into [0,1). Rejects non-finite input.
inline CirclePoint wrap(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("wrap: non-finite input");
  double v = x - std::floor(x);
  if (v >= 1.0) v = 0.0;  // rounding of x just below an integer
  if (v < 0.0) v = 0.0;
  return CirclePoint{v};
}

/// Circular distance min(|x-y|, 1-|x-y|) in [0, 1/2].
inline double circ_dist(CirclePoint x, CirclePoint y) {
  double d = std::fabs(x.value - y.value);
  return std::min(d, 1.0 - d);
}

/// The 1-periodic sawtooth coupling kernel: the representative of u mod 1 is
/// taken in (-1/2, 1/2]; g(u) = u on the open interval and g(1/2) = 0.
inline double kernel_g(double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("kernel_g: non-finite input");
  double r = u - std::ceil(u - 0.5);
  return r == 0.5 ? 0.0 : r;
}

/// Closed arc on the circle, stored as (start, length) with length in [0,1].
/// Length 1 is the whole circle, length 0 a single point.
struct Arc {
  CirclePoint start;
  double length = 0.0;
};

inline bool arc_contains(const Arc& a, CirclePoint x) {
  if (a.length >= 1.0) return true;
  double d = x.value - a.start.value;
  d -= std::floor(d);
  return d <= a.length;
}

inline CirclePoint arc_midpoint(const Arc& a) {
  return wrap(a.start.value + 0.5 * a.length);
}

/// Smallest arc containing a finite point set. The set must leave a gap on the
/// circle; otherwise there is no proper (length < 1) hull.
Arc arc_hull(const std::vector<CirclePoint>& points);

/// Image of an arc under a strictly increasing lift R -> R.
template <typename Lift>
Arc map_arc(const Lift& lift, const Arc& a) {
  double lo = lift(a.start.value);
  double hi = lift(a.start.value + a.length);
  if (hi < lo) throw std::invalid_argument("map_arc: lift not increasing on arc");
  return Arc{wrap(lo), std::min(hi - lo, 1.0)};
}

}  // namespace scto
