#include "scto/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scto {

std::vector<double> apply_transfer_T(const ExpandingMap& map, const GridDensity& u) {
  const int m = u.resolution();
  std::vector<double> out(m);
  for (int j = 0; j < m; ++j) {
    CirclePoint y{static_cast<double>(j) / m};
    double s = 0.0;
    for (CirclePoint x : inverse_branches(map, y))
      s += u.evaluate_snapped(x.value) / map.d1(x.value);
    out[j] = s;
  }
  return out;
}

std::vector<double> apply_transfer_phi(const CouplingField& field, const GridDensity& u) {
  const int m = u.resolution();
  std::vector<double> out(m);
  for (int j = 0; j < m; ++j) {
    CirclePoint xi = field.phi_inverse(CirclePoint{static_cast<double>(j) / m});
    out[j] = u.evaluate_snapped(xi.value) / field.phi_prime(xi.value);
  }
  return out;
}

GridDensity pushforward_T(const ExpandingMap& map, const GridDensity& d) {
  return normalize(clamp_nonnegative(GridDensity(apply_transfer_T(map, d))));
}

GridDensity pushforward_phi(const CouplingField& field, const GridDensity& d) {
  return normalize(clamp_nonnegative(GridDensity(apply_transfer_phi(field, d))));
}

GridDensity step(double eps, const GridDensity& d, const ExpandingMap& map) {
  CouplingField field(eps, d);
  GridDensity mid(apply_transfer_phi(field, d));
  GridDensity img(apply_transfer_T(map, mid));
  return normalize(clamp_nonnegative(img));
}

std::vector<double> image_derivative_formula(double eps, const GridDensity& d,
                                             const ExpandingMap& map) {
  CouplingField field(eps, d);
  const int m = d.resolution();
  std::vector<double> out(m);
  for (int j = 0; j < m; ++j) {
    CirclePoint y{static_cast<double>(j) / m};
    double s = 0.0;
    for (CirclePoint z : inverse_branches(map, y)) {
      CirclePoint x = field.phi_inverse(z);
      double pp = field.phi_prime(x.value);
      double fp = map.d1(z.value) * pp;
      double fpp = map.d2(z.value) * pp * pp + map.d1(z.value) * field.phi_second(x.value);
      // (f o F^{-1} / F' o F^{-1})' with (F^{-1})'' = -F''/(F')^3
      s += d.evaluate_deriv_snapped(x.value) / (fp * fp) -
           d.evaluate_snapped(x.value) * fpp / (fp * fp * fp);
    }
    out[j] = s;
  }
  return out;
}

namespace {

// exp of the least-squares slope of log(d_k) over the last half of the run
double estimate_rate(const std::vector<double>& dists) {
  std::vector<std::pair<double, double>> pts;
  std::size_t from = dists.size() / 2;
  for (std::size_t k = from; k < dists.size(); ++k)
    if (dists[k] > 0.0) pts.push_back({static_cast<double>(k), std::log(dists[k])});
  if (pts.size() < 2) {
    if (dists.size() >= 2 && dists[dists.size() - 2] > 0.0)
      return std::clamp(dists.back() / dists[dists.size() - 2], 1e-12, 1.0 - 1e-12);
    return 0.5;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(pts.size());
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace

std::pair<GridDensity, FixedPointReport> fixed_point(double eps, const GridDensity& d0,
                                                     const ExpandingMap& map, double tol,
                                                     int max_iter) {
  FixedPointReport rep;
  GridDensity f = normalize(clamp_nonnegative(d0));
  for (int k = 0; k < max_iter; ++k) {
    GridDensity fn = step(eps, f, map);
    double dist = bv_distance(fn, f);
    rep.bv_distances.push_back(dist);
    f = fn;
    ++rep.iterations;
    if (dist < tol) {
      rep.converged = true;
      break;
    }
  }
  rep.residual = bv_distance(step(eps, f, map), f);
  rep.gamma_est = estimate_rate(rep.bv_distances);
  return {std::move(f), std::move(rep)};
}

SweepReport sweep_epsilon(const std::vector<double>& eps_grid, const GridDensity& d0,
                          const ExpandingMap& map, double tol, int max_iter) {
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] > eps_grid[i - 1]))
      throw std::invalid_argument("sweep_epsilon: eps grid must be strictly increasing");

  SweepReport rep;
  rep.eps_grid = eps_grid;
  const GridDensity* warm = nullptr;
  for (double eps : eps_grid) {
    auto [f, cell_rep] = fixed_point(eps, warm ? *warm : d0, map, tol, max_iter);
    rep.fixed_densities.push_back(std::move(f));
    rep.cells.push_back({eps, std::move(cell_rep)});
    warm = &rep.fixed_densities.back();
  }

  for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i) {
    if (rep.cells[i].report.converged && rep.cells[i + 1].report.converged) {
      double delta = eps_grid[i + 1] - eps_grid[i];
      double ratio = bv_distance(rep.fixed_densities[i + 1], rep.fixed_densities[i]) / delta;
      rep.ratios.push_back(ratio);
      if (!rep.K_est || ratio > *rep.K_est) rep.K_est = ratio;
    } else {
      rep.ratios.push_back(std::nullopt);
    }
  }

  // warm-start independence probe: rerun the last converged cell cold
  for (std::size_t i = rep.cells.size(); i-- > 0;) {
    if (rep.cells[i].report.converged) {
      auto [f_cold, r_cold] = fixed_point(eps_grid[i], d0, map, tol, max_iter);
      (void)r_cold;
      rep.warm_cold_dev = bv_distance(f_cold, rep.fixed_densities[i]);
      break;
    }
  }
  return rep;
}

LasotaYorkeReport lasota_yorke_check(const ExpandingMap& map, double eps,
                                     const GridDensity& d, const GridDensity& u) {
  if (std::fabs(u.mass()) > 1e-8)
    throw std::invalid_argument("lasota_yorke_check: test function must have zero mean");
  CouplingField field(eps, normalize(clamp_nonnegative(d)));

  GridDensity mid(apply_transfer_phi(field, u));
  GridDensity img(apply_transfer_T(map, mid));

  const int m = d.resolution();
  double dtilde = 0.0;
  for (int j = 0; j < m; ++j) {
    double x = static_cast<double>(j) / m;
    double pp = field.phi_prime(x);
    double phi_x = field.phi_lift(x);
    double fp = map.d1(phi_x) * pp;
    double fpp = map.d2(phi_x) * pp * pp + map.d1(phi_x) * field.phi_second(x);
    dtilde = std::max(dtilde, std::fabs(fpp) / (fp * fp));
  }

  LasotaYorkeReport rep;
  NormReport nu = norms(u);
  rep.lhs = norms(img).bv;
  rep.alpha = 1.0 / (map.omega * (1.0 - eps));
  rep.dtilde = dtilde;
  rep.rhs = rep.alpha * nu.bv + (1.0 + dtilde) * nu.l1;
  rep.margin = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs + 1e-6;
  return rep;
}

}  // namespace scto
