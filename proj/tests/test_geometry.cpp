#include <doctest.h>

#include <cmath>

#include "elascat/geometry.hpp"

using namespace elascat;

TEST_CASE("benchmark shapes at pinned parameters") {
  const BoundaryCurve pe = peanut();
  CHECK(norm(pe.eval(0.0) - Vec2{std::sqrt(0.5), 0.0}) < 1e-15);
  CHECK(norm(pe.eval(kPi / 2) - Vec2{0.0, std::sqrt(0.15)}) < 1e-15);

  const BoundaryCurve ap = apple();
  CHECK(norm(ap.eval(0.0) - Vec2{0.75 / 1.7, 0.0}) < 1e-15);

  const BoundaryCurve ki = kite();
  CHECK(norm(ki.eval(0.0) - Vec2{1.7, 0.0}) < 1e-15);
}

TEST_CASE("frame quantities") {
  {
    const CurveFrame f = frame(circle(1.0), 0.0);
    CHECK(norm(f.normal - Vec2{1, 0}) < 1e-15);
    CHECK(norm(f.tangent - Vec2{0, 1}) < 1e-15);
    CHECK(f.speed == doctest::Approx(1.0));
  }
  {
    const CurveFrame f = frame(kite(), 0.0);
    CHECK(norm(f.d1 - Vec2{0.0, 1.2}) < 1e-15);
    CHECK(f.speed == doctest::Approx(1.2));
    CHECK(norm(f.tangent - Vec2{0, 1}) < 1e-15);
    CHECK(norm(f.normal - Vec2{1, 0}) < 1e-15);
  }
  for (const BoundaryCurve& c : {peanut(), apple(), kite()})
    for (int j = 0; j < 16; ++j) {
      const CurveFrame f = frame(c, 2.0 * kPi * j / 16.0);
      CHECK(std::abs(dot(f.normal, f.tangent)) < 1e-14);
      CHECK(norm(f.normal) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("analytic curve derivatives match finite differences") {
  for (const BoundaryCurve& c : {peanut(), apple(), kite()}) {
    const double h = 1e-5;
    for (const double t : {0.3, 1.7, 3.9, 5.5}) {
      const Vec2 fd1 = (1.0 / (2 * h)) * (c.eval(t + h) - c.eval(t - h));
      const Vec2 fd2 = (1.0 / (2 * h)) * (c.deriv1(t + h) - c.deriv1(t - h));
      CHECK(norm(fd1 - c.deriv1(t)) < 1e-8);
      CHECK(norm(fd2 - c.deriv2(t)) < 1e-8);
    }
  }
}

TEST_CASE("radial updates and positivity") {
  RadialTrigCurve r(2);
  r.a[0] = 0.5;
  RadialTrigCurve zero(2);
  CHECK(radial_update(r, zero, 16).radius(1.0) == doctest::Approx(0.5));

  RadialTrigCurve inc(2);
  inc.a[0] = 0.1;
  CHECK(radial_update(r, inc, 16).radius(2.0) == doctest::Approx(0.6));

  RadialTrigCurve bad(2);
  bad.a[0] = -0.6;
  CHECK_THROWS_AS(radial_update(r, bad, 16), NumericalError);
}

TEST_CASE("perturbation field") {
  {
    RadialTrigCurve q(0);
    q.a[0] = 1.0;
    const PerturbationField f = perturbation_field(q, 0.0);
    CHECK(norm(f.q - Vec2{1, 0}) < 1e-15);
    CHECK(norm(f.dq - Vec2{0, 1}) < 1e-15);
    CHECK(norm(f.v - Vec2{1, 0}) < 1e-15);
  }
  {
    RadialTrigCurve q(0);
    const PerturbationField f = perturbation_field(q, 1.3);
    CHECK(norm(f.q) == 0.0);
    CHECK(norm(f.dq) == 0.0);
  }
  {
    RadialTrigCurve q(1);
    q.a[1] = 1.0;  // q(t) = cos t
    const PerturbationField f = perturbation_field(q, 0.0);
    CHECK(norm(f.q - Vec2{1, 0}) < 1e-15);
    CHECK(norm(f.dq - Vec2{0, 1}) < 1e-15);
  }
}

TEST_CASE("radial curve derivatives are consistent") {
  RadialTrigCurve r(3);
  r.a = {0.8, 0.1, -0.05, 0.02};
  r.b = {0.03, 0.07, -0.01};
  const BoundaryCurve c = r.as_curve();
  const double h = 1e-5;
  for (const double t : {0.2, 2.2, 4.8}) {
    const Vec2 fd1 = (1.0 / (2 * h)) * (c.eval(t + h) - c.eval(t - h));
    const Vec2 fd2 = (1.0 / (2 * h)) * (c.deriv1(t + h) - c.deriv1(t - h));
    CHECK(norm(fd1 - c.deriv1(t)) < 1e-8);
    CHECK(norm(fd2 - c.deriv2(t)) < 1e-8);
  }
}

TEST_CASE("Fourier round trip on the collocation grid") {
  RadialTrigCurve r(4);
  r.a = {0.9, 0.2, -0.1, 0.04, 0.01};
  r.b = {0.05, -0.03, 0.02, 0.005};
  const CollocationGrid grid(16);
  std::vector<double> samples;
  for (double t : grid.nodes) samples.push_back(r.radius(t));
  const RadialTrigCurve back = trig_fit(samples, 4);
  for (std::size_t k = 0; k < r.a.size(); ++k)
    CHECK(back.a[k] == doctest::Approx(r.a[k]).epsilon(1e-13));
  for (std::size_t k = 0; k < r.b.size(); ++k)
    CHECK(back.b[k] == doctest::Approx(r.b[k]).epsilon(1e-13));
}

TEST_CASE("polar radius and winding") {
  const BoundaryCurve pe = peanut();
  CHECK(polar_radius(pe, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(polar_radius(pe, kPi / 2) == doctest::Approx(std::sqrt(0.15)).epsilon(1e-9));
  CHECK(winding_number(pe, {0.0, 0.2}) == 1);
  CHECK(winding_number(pe, {0.4, 0.6}) == 0);
  const BoundaryCurve ki = kite();
  CHECK(winding_number(ki, {0.5, 0.5}) == 1);
  CHECK(winding_number(ki, {-1.0, 0.5}) == 0);
  CHECK(radial_l2_distance(pe, pe, 128) < 1e-12);
}
