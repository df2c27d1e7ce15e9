#include "scto/maps.hpp"

#include <limits>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "scto/rootfind.hpp"

namespace scto {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ExpandingMap perturbed_linear_raw(int degree, double delta) {
  ExpandingMap m;
  m.degree = degree;
  m.lift = [degree, delta](double x) { return degree * x + delta * std::sin(kTwoPi * x); };
  m.d1 = [degree, delta](double x) { return degree + delta * kTwoPi * std::cos(kTwoPi * x); };
  m.d2 = [delta](double x) { return -delta * kTwoPi * kTwoPi * std::sin(kTwoPi * x); };
  m.omega = degree - kTwoPi * std::fabs(delta);
  m.Omega = degree + kTwoPi * std::fabs(delta);
  m.Dmax = kTwoPi * kTwoPi * std::fabs(delta);
  m.lip_d2 = kTwoPi * kTwoPi * kTwoPi * std::fabs(delta);
  std::ostringstream os;
  os << "perturbed_linear(N=" << degree << ", delta=" << delta << ")";
  m.description = os.str();
  return m;
}

ExpandingMap make_perturbed_linear(int degree, double delta) {
  if (degree < 2) throw std::invalid_argument("make_perturbed_linear: degree must be >= 2");
  ExpandingMap m = perturbed_linear_raw(degree, delta);
  std::ostringstream os;
  if (!(m.omega > 1.0)) {
    os << m.description << " rejected: omega = " << m.omega << " violates omega > 1";
    throw std::invalid_argument(os.str());
  }
  if (!(degree < m.omega * m.omega)) {
    os << m.description << " rejected: omega^2 = " << m.omega * m.omega
       << " violates N < omega^2 (N = " << degree << ")";
    throw std::invalid_argument(os.str());
  }
  return m;
}

MapValidationReport validate(const ExpandingMap& map, int scan_resolution) {
  MapValidationReport rep;
  const int n = scan_resolution;
  const double h = 1.0 / n;

  double min_d1 = std::numeric_limits<double>::infinity();
  double max_deg_err = 0.0;
  double max_lip = 0.0;
  double prev_d2 = map.d2(0.0);
  for (int j = 0; j < n; ++j) {
    double x = j * h;
    min_d1 = std::min(min_d1, map.d1(x));
    max_deg_err = std::max(max_deg_err,
                           std::fabs(map.lift(x + 1.0) - map.lift(x) - map.degree));
    double cur = map.d2(x + h);
    max_lip = std::max(max_lip, std::fabs(cur - prev_d2) / h);
    prev_d2 = cur;
  }

  rep.checks.push_back({"omega > 1", map.omega > 1.0, map.omega - 1.0});
  rep.checks.push_back({"N < omega^2", map.degree < map.omega * map.omega,
                        map.omega * map.omega - map.degree});
  rep.checks.push_back({"T' > 0 on grid", min_d1 > 0.0, min_d1});
  rep.checks.push_back({"grid min T' >= omega - tol", min_d1 >= map.omega - 1e-8,
                        min_d1 - map.omega});
  rep.checks.push_back({"degree consistency", max_deg_err <= 1e-10, 1e-10 - max_deg_err});
  rep.checks.push_back({"sampled Lip(T'') <= stated bound",
                        max_lip <= map.lip_d2 + 1e-6, map.lip_d2 + 1e-6 - max_lip});
  return rep;
}

std::vector<CirclePoint> inverse_branches(const ExpandingMap& map, CirclePoint y) {
  const int N = map.degree;
  const double L0 = map.lift(0.0);
  double frac = y.value - L0;
  frac -= std::floor(frac);  // offset of the first target above lift(0)
  std::vector<CirclePoint> roots;
  roots.reserve(N);
  for (int k = 0; k < N; ++k) {
    double target = L0 + frac + k;
    double x = solve_increasing(map.lift, map.d1, 0.0, 1.0, target, 1e-15);
    roots.push_back(wrap(x));
  }
  std::sort(roots.begin(), roots.end(),
            [](CirclePoint a, CirclePoint b) { return a.value < b.value; });
  return roots;
}

}  // namespace scto
