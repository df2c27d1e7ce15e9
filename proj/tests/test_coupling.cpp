#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "scto/coupling.hpp"
#include "scto/rng.hpp"

using namespace scto;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent displacement oracle: direct Riemann sum of g(y-x) f(y) over a
// fine lifted window, using only analytic f.
double displacement_oracle(const std::function<double(double)>& f, double x) {
  const int n = 200000;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double u = (k + 0.5) / n - 0.5;  // midpoint rule on (-1/2, 1/2)
    acc += u * f(x + u);
  }
  return acc / n;
}
}  // namespace

TEST_CASE("displacement of a trig density has the analytic closed form") {
  // f = 1 + 0.2 sin(2 pi x)  =>  G(x) = 0.1 cos(2 pi x) / pi
  auto f_fun = [](double x) { return 1.0 + 0.2 * std::sin(2 * kPi * x); };
  GridDensity f = GridDensity::trig(2048, 0.2, 0.0, 1);
  auto G = displacement_nodes_naive(f);
  CHECK(G[0] == doctest::Approx(0.1 / kPi).epsilon(1e-7));
  for (int j = 0; j < 2048; j += 37) {
    double x = j / 2048.0;
    double exact = 0.1 * std::cos(2 * kPi * x) / kPi;
    CHECK(G[j] == doctest::Approx(exact).epsilon(1e-6));
    CHECK(displacement_oracle(f_fun, x) == doctest::Approx(exact).epsilon(1e-6));
  }
  // arbitrary-point evaluation agrees off the grid as well
  CHECK(displacement(f, wrap(0.123)) ==
        doctest::Approx(0.1 * std::cos(2 * kPi * 0.123) / kPi).epsilon(1e-6));
}

TEST_CASE("displacement of the uniform density vanishes") {
  auto G = displacement_nodes_fast(GridDensity::constant(4096));
  for (double g : G) CHECK(std::fabs(g) < 1e-14);
}

TEST_CASE("fast and naive displacement paths agree") {
  for (int m : {64, 512, 4096}) {
    std::vector<double> v(m);
    for (int j = 0; j < m; ++j) v[j] = 0.2 + rng_uniform(51, j);
    GridDensity f = normalize(GridDensity(std::move(v)));
    auto a = displacement_nodes_naive(f);
    auto b = displacement_nodes_fast(f);
    REQUIRE(a.size() == b.size());
    for (int j = 0; j < m; ++j) CHECK(std::fabs(a[j] - b[j]) < 1e-10);
  }
}

TEST_CASE("Phi examples: value, closed-form derivative, lift identity") {
  GridDensity f = GridDensity::trig(4096, 0.2, 0.0, 1);
  CouplingField field(0.1, f);

  CHECK(field.phi(wrap(0.0)).value == doctest::Approx(0.01 / kPi).epsilon(1e-6));
  CHECK(field.phi(wrap(0.0)).value == doctest::Approx(0.0031831).epsilon(1e-4));

  // Phi'(x) = 1 + eps (f(x + 1/2) - 1); at x = 1/4 this is 1 + 0.1*(-0.2)
  CHECK(field.phi_prime(0.25) == doctest::Approx(0.98).epsilon(1e-8));
  CHECK(field.phi_second(0.0) ==
        doctest::Approx(0.1 * 0.4 * kPi * std::cos(kPi)).epsilon(1e-6));

  for (int i = 0; i < 50; ++i) {
    double x = rng_uniform(23, i);
    CHECK(field.phi_lift(x + 1.0) ==
          doctest::Approx(field.phi_lift(x) + 1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed-form Phi' matches finite differences of the lift") {
  GridDensity f = GridDensity::trig(4096, -0.15, 0.1, 2);
  for (double eps : {0.05, 0.5, 0.9}) {
    CouplingField field(eps, f);
    const double h = 1e-5;
    for (int i = 0; i < 60; ++i) {
      double x = rng_uniform(29, i);
      double fd = (field.phi_lift(x + h) - field.phi_lift(x - h)) / (2 * h);
      CHECK(field.phi_prime(x) == doctest::Approx(fd).epsilon(1e-5));
      double fd2 = (field.phi_lift(x + h) - 2 * field.phi_lift(x) +
                    field.phi_lift(x - h)) / (h * h);
      CHECK(field.phi_second(x) == doctest::Approx(fd2).epsilon(1e-3));
    }
  }
}

TEST_CASE("Phi' lower bound 1 - eps holds on concentrated densities") {
  GridDensity b = GridDensity::bump(2048, wrap(0.3), 0.08);
  for (double eps : {0.2, 0.8}) {
    CouplingField field(eps, b);
    double mn = 1e300;
    for (int j = 0; j < 2048; ++j)
      mn = std::min(mn, field.phi_prime(j / 2048.0));
    CHECK(mn >= 1.0 - eps - 1e-9);
  }
}

TEST_CASE("phi_inverse round-trips to solver precision") {
  GridDensity f = GridDensity::trig(1024, 0.25, -0.1, 1);
  for (double eps : {0.02, 0.4, 0.85}) {
    CouplingField field(eps, f);
    for (int i = 0; i < 80; ++i) {
      CirclePoint y = wrap(rng_uniform(41, i));
      CirclePoint x = field.phi_inverse(y);
      CHECK(circ_dist(field.phi(x), y) < 1e-12);
    }
  }
}

TEST_CASE("constructor rejects bad parameters") {
  GridDensity f = GridDensity::constant(64);
  CHECK_THROWS(CouplingField(-0.1, f));
  CHECK_THROWS(CouplingField(1.0, f));
  std::vector<double> v(64, 1.0);
  v[3] = 5.0;  // mass far from 1
  CHECK_THROWS(CouplingField(0.1, GridDensity(std::move(v))));
}
