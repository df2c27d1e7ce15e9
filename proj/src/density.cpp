#include "scto/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scto/rng.hpp"

namespace scto {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

GridDensity::GridDensity(std::vector<double> values)
    : m_(static_cast<int>(values.size())), spline_(std::move(values)) {
  if (m_ < 8 || !power_of_two(m_))
    throw std::invalid_argument("GridDensity: resolution must be a power of two >= 8");
}

GridDensity GridDensity::constant(int resolution, double value) {
  return GridDensity(std::vector<double>(resolution, value));
}

GridDensity GridDensity::trig(int resolution, double a, double b, int k) {
  return from_function(resolution, [a, b, k](double x) {
    return 1.0 + a * std::sin(kTwoPi * k * x) + b * std::cos(kTwoPi * k * x);
  });
}

GridDensity GridDensity::bump(int resolution, CirclePoint center, double radius) {
  if (radius <= 0.0 || radius >= 0.5)
    throw std::invalid_argument("GridDensity::bump: radius must be in (0, 1/2)");
  GridDensity raw = from_function(resolution, [center, radius](double x) {
    double d = x - center.value;
    d -= std::round(d);  // signed circular offset in [-1/2, 1/2]
    if (std::fabs(d) >= radius) return 0.0;
    double c = 1.0 + std::cos(std::numbers::pi * d / radius);
    return c * c;
  });
  return normalize(raw);
}

GridDensity GridDensity::from_function(int resolution,
                                       const std::function<double(double)>& f) {
  std::vector<double> v(resolution);
  for (int j = 0; j < resolution; ++j) v[j] = f(static_cast<double>(j) / resolution);
  return GridDensity(std::move(v));
}

double GridDensity::evaluate_snapped(double x) const {
  double t = x - std::floor(x);
  int j = static_cast<int>(t * m_);
  if (j >= m_) j = m_ - 1;
  const auto& v = values();
  if (v[j] == 0.0 && v[(j + 1) % m_] == 0.0) return 0.0;
  return spline_.eval(x);
}

double GridDensity::evaluate_deriv_snapped(double x) const {
  double t = x - std::floor(x);
  int j = static_cast<int>(t * m_);
  if (j >= m_) j = m_ - 1;
  const auto& v = values();
  if (v[j] == 0.0 && v[(j + 1) % m_] == 0.0) return 0.0;
  return spline_.deriv(x);
}

double GridDensity::mass() const {
  const auto& v = values();
  double s = 0.0;
  for (double x : v) s += x;
  return s / m_;
}

NormReport norms(const GridDensity& d) {
  const int m = d.resolution();
  const auto& v = d.values();
  NormReport r;
  double sum_abs = 0.0, sum_dabs = 0.0;
  std::vector<double> nd(m);
  for (int j = 0; j < m; ++j) {
    nd[j] = d.node_deriv(j);
    sum_abs += std::fabs(v[j]);
    sum_dabs += std::fabs(nd[j]);
    r.sup_deriv = std::max(r.sup_deriv, std::fabs(nd[j]));
  }
  for (int j = 0; j < m; ++j)
    r.lip_deriv = std::max(r.lip_deriv, std::fabs(nd[(j + 1) % m] - nd[j]) * m);
  r.l1 = sum_abs / m;
  r.variation = sum_dabs / m;
  r.bv = r.l1 + r.variation;
  return r;
}

MembershipReport check_membership(const GridDensity& d, const MembershipSpec& spec) {
  NormReport n = norms(d);
  MembershipReport r;
  r.var_margin = spec.R - n.variation;
  r.sup_margin = spec.S - n.sup_deriv;
  r.lip_margin = spec.c - n.lip_deriv;
  r.ok = r.var_margin >= 0.0 && r.sup_margin >= 0.0 && r.lip_margin >= 0.0;
  return r;
}

Arc support_arc(const GridDensity& d, double floor_rel) {
  const int m = d.resolution();
  const auto& v = d.values();
  double vmax = *std::max_element(v.begin(), v.end());
  if (vmax <= 0.0) throw std::domain_error("support_arc: density has no positive node");
  const double thr = floor_rel * vmax;

  std::vector<int> above;
  for (int j = 0; j < m; ++j)
    if (v[j] > thr) above.push_back(j);
  if (above.empty()) throw std::domain_error("support_arc: no node above the floor");

  // hull = complement of the largest circular gap in the above-floor node set
  int best_gap = m - above.back() + above.front();
  std::size_t start_pos = 0;
  for (std::size_t i = 1; i < above.size(); ++i) {
    int gap = above[i] - above[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      start_pos = i;
    }
  }
  if (best_gap < 3)
    throw std::domain_error("support_arc: support not proper (above-floor nodes span the circle)");

  const double h = 1.0 / m;
  int span = m - best_gap;  // nodes from first to last above-floor node
  int start_node = above[start_pos];
  return Arc{wrap((start_node - 1) * h), (span + 2) * h};
}

namespace {

struct Seg {
  double len, g0, g1;
};

// int |g - a| over all segments, g linear per segment.
double abs_integral(const std::vector<Seg>& segs, double a) {
  double total = 0.0;
  for (const auto& s : segs) {
    double u0 = s.g0 - a, u1 = s.g1 - a;
    if (u0 * u1 >= 0.0) {
      total += s.len * 0.5 * (std::fabs(u0) + std::fabs(u1));
    } else {
      total += s.len * 0.5 * (u0 * u0 + u1 * u1) / std::fabs(u1 - u0);
    }
  }
  return total;
}

// d/da int |g - a| = measure{g < a} - measure{g > a} (monotone in a).
double abs_integral_slope(const std::vector<Seg>& segs, double a) {
  double below = 0.0, above = 0.0;
  for (const auto& s : segs) {
    double lo = std::min(s.g0, s.g1), hi = std::max(s.g0, s.g1);
    if (hi <= a) {
      below += s.len;
    } else if (lo >= a) {
      above += s.len;
    } else {
      double frac = (a - lo) / (hi - lo);
      below += s.len * frac;
      above += s.len * (1.0 - frac);
    }
  }
  return below - above;
}

// min over the vertical shift a (the quotient-by-constants L1 norm).
double min_shift_integral(const std::vector<Seg>& segs) {
  double lo = segs.front().g0, hi = segs.front().g0;
  for (const auto& s : segs) {
    lo = std::min({lo, s.g0, s.g1});
    hi = std::max({hi, s.g0, s.g1});
  }
  if (hi - lo <= 0.0) return 0.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    if (abs_integral_slope(segs, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return abs_integral(segs, 0.5 * (lo + hi));
}

// Cut node: middle of the longest circular run where pred holds, else 0.
int cut_node(int m, const std::function<bool(int)>& below) {
  int best_len = 0, best_start = 0;
  int run_start = -1;
  for (int j = 0; j < 2 * m; ++j) {
    if (below(j % m)) {
      if (run_start < 0) run_start = j;
      int len = j - run_start + 1;
      if (len > best_len && run_start < m) {
        best_len = std::min(len, m);
        best_start = run_start;
      }
    } else {
      run_start = -1;
    }
  }
  if (best_len == 0) return 0;
  return (best_start + best_len / 2) % m;
}

// Node CDF from cut node j0 by periodic trapezoid; size m+1.
std::vector<double> node_cdf(const GridDensity& d, int j0) {
  const int m = d.resolution();
  const auto& v = d.values();
  std::vector<double> F(m + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    double a = v[(j0 + k - 1) % m], b = v[(j0 + k) % m];
    F[k] = F[k - 1] + 0.5 * (a + b) / m;
  }
  return F;
}

double interp_cdf(const std::vector<double>& F, double t) {
  const int m = static_cast<int>(F.size()) - 1;
  double s = t * m;
  int k = static_cast<int>(s);
  if (k >= m) k = m - 1;
  double frac = s - k;
  return F[k] + frac * (F[k + 1] - F[k]);
}

}  // namespace

double wasserstein1(const GridDensity& d0, const GridDensity& e0) {
  const GridDensity* dp = &d0;
  const GridDensity* ep = &e0;
  GridDensity dr = d0, er = e0;
  if (d0.resolution() != e0.resolution()) {
    int m = std::max(d0.resolution(), e0.resolution());
    dr = resample(d0, m);
    er = resample(e0, m);
    dp = &dr;
    ep = &er;
  }
  const int m = dp->resolution();
  const auto& vd = dp->values();
  const auto& ve = ep->values();
  double md = *std::max_element(vd.begin(), vd.end());
  double me = *std::max_element(ve.begin(), ve.end());
  int j0 = cut_node(m, [&](int j) {
    return vd[j] < kSupportFloor * md && ve[j] < kSupportFloor * me;
  });

  std::vector<double> Fd = node_cdf(*dp, j0), Fe = node_cdf(*ep, j0);
  std::vector<Seg> segs(m);
  const double h = 1.0 / m;
  for (int k = 0; k < m; ++k)
    segs[k] = Seg{h, Fd[k] - Fe[k], Fd[k + 1] - Fe[k + 1]};
  return min_shift_integral(segs);
}

double wasserstein_to_dirac(const GridDensity& d, CirclePoint x) {
  const int m = d.resolution();
  const auto& v = d.values();
  double vmax = *std::max_element(v.begin(), v.end());
  int j0 = cut_node(m, [&](int j) { return v[j] < kSupportFloor * vmax; });
  std::vector<double> Fd = node_cdf(d, j0);
  double u = wrap(x.value - static_cast<double>(j0) / m).value;

  const double h = 1.0 / m;
  std::vector<Seg> segs;
  segs.reserve(m + 1);
  for (int k = 0; k < m; ++k) {
    double t0 = k * h, t1 = (k + 1) * h;
    double step0 = t0 >= u ? 1.0 : 0.0;
    if (t0 < u && u < t1) {
      double Fu = interp_cdf(Fd, u);
      segs.push_back(Seg{u - t0, Fd[k], Fu});
      segs.push_back(Seg{t1 - u, Fu - 1.0, Fd[k + 1] - 1.0});
    } else {
      segs.push_back(Seg{h, Fd[k] - step0, Fd[k + 1] - (t1 > u ? 1.0 : step0)});
    }
  }
  return min_shift_integral(segs);
}

double wasserstein1_empirical(std::vector<CirclePoint> points, const GridDensity& d) {
  if (points.empty()) throw std::invalid_argument("wasserstein1_empirical: no points");
  const int m = d.resolution();
  const double n = static_cast<double>(points.size());
  std::vector<double> p;
  p.reserve(points.size());
  for (auto q : points) p.push_back(wrap(q.value).value);
  std::sort(p.begin(), p.end());
  std::vector<double> Fd = node_cdf(d, 0);

  std::vector<Seg> segs;
  segs.reserve(m + p.size() + 2);
  std::size_t ip = 0;
  double prev = 0.0;
  double femp = 0.0;
  auto flush_to = [&](double t) {
    if (t > prev) {
      segs.push_back(Seg{t - prev, interp_cdf(Fd, prev) - femp, interp_cdf(Fd, t) - femp});
      prev = t;
    }
  };
  for (int k = 0; k <= m; ++k) {
    double node = static_cast<double>(k) / m;
    while (ip < p.size() && p[ip] <= node) {
      flush_to(p[ip]);
      double atom = p[ip];
      while (ip < p.size() && p[ip] == atom) {
        femp += 1.0 / n;
        ++ip;
      }
    }
    flush_to(node);
  }
  return min_shift_integral(segs);
}

GridDensity normalize(const GridDensity& d) {
  double m = d.mass();
  if (!(m > 0.0)) throw std::invalid_argument("normalize: nonpositive mass");
  if (std::fabs(m - 1.0) <= 1e-15) return d;
  std::vector<double> v = d.values();
  for (double& x : v) x /= m;
  return GridDensity(std::move(v));
}

std::vector<CirclePoint> sample(const GridDensity& d, std::size_t n, std::uint64_t seed) {
  const int m = d.resolution();
  const double h = 1.0 / m;
  std::vector<double> v = d.values();
  for (double& x : v)
    if (x < 0.0) x = 0.0;

  std::vector<double> cum(m + 1, 0.0);
  for (int j = 0; j < m; ++j)
    cum[j + 1] = cum[j] + 0.5 * h * (v[j] + v[(j + 1) % m]);
  const double total = cum[m];
  if (!(total > 0.0)) throw std::invalid_argument("sample: zero-mass density");

  std::vector<CirclePoint> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng_uniform(seed, i) * total;
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    int j = static_cast<int>(it - cum.begin()) - 1;
    if (j < 0) j = 0;
    if (j >= m) j = m - 1;
    double w = u - cum[j];
    double a = v[j], b = v[(j + 1) % m];
    double slope2 = (b - a) / h;  // quadratic coefficient * 2
    double disc = a * a + 2.0 * slope2 * w;
    double s;
    if (std::fabs(slope2) < 1e-300) {
      s = a > 0.0 ? w / a : 0.0;
    } else {
      double root = std::sqrt(std::max(disc, 0.0));
      s = (a + root > 0.0) ? 2.0 * w / (a + root) : 0.0;
    }
    s = std::clamp(s, 0.0, h);
    out[i] = wrap(j * h + s);
  }
  return out;
}

GridDensity resample(const GridDensity& d, int resolution) {
  if (resolution == d.resolution()) return d;
  std::vector<double> v(resolution);
  for (int j = 0; j < resolution; ++j)
    v[j] = d.spline().eval(static_cast<double>(j) / resolution);
  return GridDensity(std::move(v));
}

double bv_distance(const GridDensity& a, const GridDensity& b) {
  int m = std::max(a.resolution(), b.resolution());
  GridDensity ar = resample(a, m), br = resample(b, m);
  std::vector<double> diff(m);
  for (int j = 0; j < m; ++j) diff[j] = ar.values()[j] - br.values()[j];
  return norms(GridDensity(std::move(diff))).bv;
}

GridDensity clamp_nonnegative(const GridDensity& d) {
  std::vector<double> v = d.values();
  for (double& x : v)
    if (x < 0.0) x = 0.0;
  return GridDensity(std::move(v));
}

}  // namespace scto
