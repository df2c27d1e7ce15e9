#include "scto/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scto/rootfind.hpp"

namespace scto {

namespace {
constexpr int kFastPathThreshold = 2048;  // prefix sums above this resolution
}

std::vector<double> displacement_nodes_naive(const GridDensity& f) {
  const int m = f.resolution();
  const auto& v = f.values();
  const int half = m / 2;
  std::vector<double> g(m);
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int k = 1; k < m; ++k) {
      double w = static_cast<double>(k) / m - 0.5;
      s += w * v[(j + k + half) % m];
    }
    g[j] = s / m;
  }
  return g;
}

std::vector<double> displacement_nodes_fast(const GridDensity& f) {
  const int m = f.resolution();
  const auto& v = f.values();
  const int half = m / 2;
  std::vector<double> P(m + 1, 0.0), Q(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    P[i + 1] = P[i] + v[i];
    Q[i + 1] = Q[i] + static_cast<double>(i) * v[i];
  }
  const double A = P[m], B = Q[m];
  std::vector<double> g(m);
  for (int j = 0; j < m; ++j) {
    double base = (B - static_cast<double>(j) * A) / m;
    double sum_low = (j > half) ? P[j - half] : 0.0;
    double sum_high = (j < half) ? A - P[j + half] : 0.0;
    int i0 = (j + half) % m;  // window endpoint node (kernel kink)
    g[j] = (base + sum_low - sum_high + 0.5 * v[i0]) / m;
  }
  return g;
}

double displacement(const GridDensity& f, CirclePoint x) {
  const int m = f.resolution();
  double s = 0.0;
  for (int k = 1; k < m; ++k) {
    double dt = static_cast<double>(k) / m - 0.5;
    s += dt * f.evaluate(wrap(x.value + dt));
  }
  return s / m;
}

CouplingField::CouplingField(double eps, GridDensity source)
    : eps_(eps),
      source_(std::move(source)),
      g_(source_.resolution() > kFastPathThreshold ? displacement_nodes_fast(source_)
                                                   : displacement_nodes_naive(source_)) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("CouplingField: eps must lie in [0,1)");
  if (std::fabs(source_.mass() - 1.0) > 1e-6)
    throw std::invalid_argument("CouplingField: source density not normalized");

  const int m = source_.resolution();
  double min_prime = 1.0;
  for (int j = 0; j < m; ++j)
    min_prime = std::min(min_prime, phi_prime(static_cast<double>(j) / m));
  if (!(min_prime > 0.0)) {
    std::ostringstream os;
    os << "CouplingField: not a diffeomorphism (min node Phi' = " << min_prime
       << " at eps = " << eps << ")";
    throw std::domain_error(os.str());
  }
}

double CouplingField::phi_prime(double x) const {
  return 1.0 + eps_ * (source_.evaluate_snapped(x + 0.5) - 1.0);
}

double CouplingField::phi_second(double x) const {
  return eps_ * source_.evaluate_deriv_snapped(x + 0.5);
}

CirclePoint CouplingField::phi_inverse(CirclePoint y) const {
  auto f = [this](double x) { return phi_lift(x); };
  auto df = [this](double x) { return phi_prime(x); };
  // |eps G| <= 1/2, so the preimage of y lies within [y - 0.55, y + 0.55]
  double x = solve_increasing(f, df, y.value - 0.55, y.value + 0.55, y.value, 1e-15);
  return wrap(x);
}

}  // namespace scto
