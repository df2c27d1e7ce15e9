#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "scto/rng.hpp"
#include "scto/torus.hpp"

using namespace scto;

TEST_CASE("wrap reduces into [0,1)") {
  CHECK(wrap(0.0).value == 0.0);
  CHECK(wrap(1.0).value == 0.0);
  CHECK(wrap(-0.25).value == doctest::Approx(0.75));
  CHECK(wrap(3.5).value == doctest::Approx(0.5));
  CHECK(wrap(-7.0).value == 0.0);
  for (int i = 0; i < 1000; ++i) {
    double x = 20.0 * (rng_uniform(11, i) - 0.5);
    double v = wrap(x).value;
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    CHECK(std::fabs(std::remainder(v - x, 1.0)) < 1e-12);
  }
  CHECK_THROWS_AS(wrap(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(wrap(INFINITY), std::invalid_argument);
}

TEST_CASE("circ_dist is a metric bounded by 1/2") {
  CHECK(circ_dist(wrap(0.1), wrap(0.9)) == doctest::Approx(0.2));
  CHECK(circ_dist(wrap(0.0), wrap(0.5)) == doctest::Approx(0.5));
  for (int i = 0; i < 2000; ++i) {
    CirclePoint a = wrap(rng_uniform(5, 3 * i));
    CirclePoint b = wrap(rng_uniform(5, 3 * i + 1));
    CirclePoint c = wrap(rng_uniform(5, 3 * i + 2));
    double ab = circ_dist(a, b);
    CHECK(ab == circ_dist(b, a));
    CHECK(ab <= 0.5 + 1e-15);
    CHECK(ab >= 0.0);
    CHECK(ab <= circ_dist(a, c) + circ_dist(c, b) + 1e-12);
  }
  CHECK(circ_dist(wrap(0.3), wrap(0.3)) == 0.0);
}

TEST_CASE("kernel_g sawtooth values and symmetries") {
  CHECK(kernel_g(0.0) == 0.0);
  CHECK(kernel_g(0.25) == doctest::Approx(0.25));
  CHECK(kernel_g(-0.25) == doctest::Approx(-0.25));
  CHECK(kernel_g(0.75) == doctest::Approx(-0.25));
  CHECK(kernel_g(0.5) == 0.0);
  CHECK(kernel_g(-0.5) == 0.0);
  CHECK(kernel_g(1.5) == 0.0);
  for (int i = 0; i < 2000; ++i) {
    double u = rng_uniform(7, i) - 0.5;  // (-1/2, 1/2)
    CHECK(kernel_g(u) == doctest::Approx(u).epsilon(1e-14));
    // oddness away from the discontinuity and 1-periodicity
    CHECK(kernel_g(-u) == doctest::Approx(-kernel_g(u)).epsilon(1e-14));
    CHECK(kernel_g(u + 3.0) == doctest::Approx(kernel_g(u)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(kernel_g(std::nan("")), std::invalid_argument);
}

TEST_CASE("arc containment and midpoint") {
  Arc a{wrap(0.9), 0.2};  // wraps through 0
  CHECK(arc_contains(a, wrap(0.95)));
  CHECK(arc_contains(a, wrap(0.05)));
  CHECK(arc_contains(a, wrap(0.9)));
  CHECK(arc_contains(a, wrap(0.1)));
  CHECK(!arc_contains(a, wrap(0.5)));
  CHECK(arc_midpoint(a).value == doctest::Approx(0.0).epsilon(1e-12));
  Arc full{wrap(0.3), 1.0};
  CHECK(arc_contains(full, wrap(0.29)));
}

TEST_CASE("arc_hull finds the smallest covering arc") {
  std::vector<CirclePoint> pts = {wrap(0.1), wrap(0.2), wrap(0.15)};
  Arc h = arc_hull(pts);
  CHECK(h.start.value == doctest::Approx(0.1));
  CHECK(h.length == doctest::Approx(0.1));

  // cluster across the wrap point
  std::vector<CirclePoint> w = {wrap(0.95), wrap(0.02), wrap(0.98)};
  Arc hw = arc_hull(w);
  CHECK(hw.start.value == doctest::Approx(0.95));
  CHECK(hw.length == doctest::Approx(0.07));

  SUBCASE("mirror property: reflecting the points reflects the hull") {
    std::vector<CirclePoint> p, q;
    for (int i = 0; i < 50; ++i) {
      double x = 0.3 * rng_uniform(42, i);
      p.push_back(wrap(x));
      q.push_back(wrap(-x));
    }
    Arc hp = arc_hull(p);
    Arc hq = arc_hull(q);
    CHECK(hp.length == doctest::Approx(hq.length).epsilon(1e-12));
    double p_end = hp.start.value + hp.length;
    CHECK(circ_dist(wrap(-p_end), hq.start) < 1e-12);
  }

  SUBCASE("dense circle has no proper hull") {
    std::vector<CirclePoint> dense;
    for (int i = 0; i < 64; ++i) dense.push_back(wrap(i / 64.0));
    Arc hd = arc_hull(dense);
    // equally spaced points: every gap ties, hull covers all points
    CHECK(hd.length >= 1.0 - 1.0 / 64 - 1e-12);
  }
  CHECK_THROWS(arc_hull({}));
}

TEST_CASE("map_arc pushes arcs through increasing lifts") {
  auto lift = [](double x) { return 2.0 * x; };
  Arc a{wrap(0.4), 0.1};
  Arc img = map_arc(lift, a);
  CHECK(img.start.value == doctest::Approx(0.8));
  CHECK(img.length == doctest::Approx(0.2));
  // expansion past full circle saturates at length 1
  Arc big{wrap(0.0), 0.6};
  CHECK(map_arc(lift, big).length == doctest::Approx(1.0));
}
