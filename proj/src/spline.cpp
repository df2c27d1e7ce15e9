#include "scto/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace scto {

PeriodicSpline::PeriodicSpline(std::vector<double> node_values)
    : m_(static_cast<int>(node_values.size())), y_(std::move(node_values)) {
  if (m_ < 4) throw std::invalid_argument("PeriodicSpline: need at least 4 nodes");
  const int n = m_;
  const double h = 1.0 / n;

  // Moments sigma solve the cyclic system
  //   sigma_{j-1} + 4 sigma_j + sigma_{j+1} = 6 (y_{j-1} - 2 y_j + y_{j+1}) / h^2,
  // handled by Sherman-Morrison on top of the (1,4,1) Thomas solve.
  std::vector<double> rhs(n);
  for (int j = 0; j < n; ++j) {
    double ym = y_[(j + n - 1) % n], yp = y_[(j + 1) % n];
    rhs[j] = 6.0 * (ym - 2.0 * y_[j] + yp) / (h * h);
  }

  // Cyclic correction: A = B + u v^T with u = gamma e_0 + e_{n-1},
  // v = e_0 + e_{n-1}/gamma, gamma = 1. B keeps (1,4,1) off the corners but
  // diagonal entries 0 and n-1 reduced by 1.
  // Solve via two Thomas solves on the modified tridiagonal matrix.
  const int nn = n;
  std::vector<double> dl(nn, 1.0), dm(nn, 4.0), du(nn, 1.0);
  dm[0] -= 1.0;
  dm[nn - 1] -= 1.0;
  std::vector<double> u(nn, 0.0);
  u[0] = 1.0;
  u[nn - 1] = 1.0;

  auto tridiag = [&](std::vector<double> b) {
    std::vector<double> cp(nn), x(nn);
    double beta = dm[0];
    cp[0] = du[0] / beta;
    x[0] = b[0] / beta;
    for (int i = 1; i < nn; ++i) {
      beta = dm[i] - dl[i] * cp[i - 1];
      cp[i] = du[i] / beta;
      x[i] = (b[i] - dl[i] * x[i - 1]) / beta;
    }
    for (int i = nn - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return x;
  };

  std::vector<double> sol_r = tridiag(rhs);
  std::vector<double> sol_u = tridiag(u);
  double fact = (sol_r[0] + sol_r[nn - 1]) / (1.0 + sol_u[0] + sol_u[nn - 1]);
  sig_.resize(nn);
  for (int i = 0; i < nn; ++i) sig_[i] = sol_r[i] - fact * sol_u[i];
}

void PeriodicSpline::locate(double x, int& j, double& tau) const {
  double t = (x - std::floor(x)) * m_;
  j = static_cast<int>(t);
  if (j >= m_) j = m_ - 1;
  tau = t - j;
}

double PeriodicSpline::eval(double x) const {
  int j;
  double tau;
  locate(x, j, tau);
  if (tau == 0.0) return y_[j];
  const double h = 1.0 / m_;
  const int jp = (j + 1) % m_;
  const double a = 1.0 - tau;
  // f = sig_j (1-tau)^3 h^2/6 + sig_jp tau^3 h^2/6
  //     + (y_j - sig_j h^2/6)(1-tau) + (y_jp - sig_jp h^2/6) tau
  const double h26 = h * h / 6.0;
  return sig_[j] * a * a * a * h26 + sig_[jp] * tau * tau * tau * h26 +
         (y_[j] - sig_[j] * h26) * a + (y_[jp] - sig_[jp] * h26) * tau;
}

double PeriodicSpline::deriv(double x) const {
  int j;
  double tau;
  locate(x, j, tau);
  const double h = 1.0 / m_;
  const int jp = (j + 1) % m_;
  const double a = 1.0 - tau;
  const double h6 = h / 6.0;
  return -sig_[j] * a * a * 3.0 * h6 + sig_[jp] * tau * tau * 3.0 * h6 +
         (y_[jp] - y_[j]) / h - (sig_[jp] - sig_[j]) * h6;
}

double PeriodicSpline::second(double x) const {
  int j;
  double tau;
  locate(x, j, tau);
  const int jp = (j + 1) % m_;
  return sig_[j] * (1.0 - tau) + sig_[jp] * tau;
}

double PeriodicSpline::node_deriv(int j) const {
  const double h = 1.0 / m_;
  const int jp = (j + 1) % m_;
  return (y_[jp] - y_[j]) / h - (2.0 * sig_[j] + sig_[jp]) * h / 6.0;
}

}  // namespace scto
