#include <doctest.h>

#include <cmath>

#include "elascat/specfun.hpp"
#include "oracles.hpp"

using namespace elascat;
using namespace elascat::specfun;

TEST_CASE("pinned values at small arguments") {
  CHECK(bessel_j0(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_j0(1.0) == doctest::Approx(0.76519768655796655).epsilon(1e-14));
  CHECK(bessel_y0(1.0) == doctest::Approx(0.08825696421567696).epsilon(1e-13));
  const Cx h0 = hankel1(0, 1.0);
  CHECK(h0.real() == doctest::Approx(0.7651976866).epsilon(1e-9));
  CHECK(h0.imag() == doctest::Approx(0.0882569642).epsilon(1e-8));
  const Cx h1 = hankel1(1, 1.0);
  CHECK(h1.real() == doctest::Approx(0.4400505857).epsilon(1e-9));
  CHECK(h1.imag() == doctest::Approx(-0.7812128213).epsilon(1e-9));
}

TEST_CASE("small-x logarithmic behavior of Y0") {
  const double x = 1e-6;
  const double lhs = bessel_y0(x) - (2.0 / kPi) * std::log(x / 2.0) * bessel_j0(x);
  CHECK(lhs == doctest::Approx(2.0 * kEulerGamma / kPi).epsilon(1e-10));
}

TEST_CASE("Wronskian J1 Y0 - J0 Y1 = 2/(pi x)") {
  for (const double x : {0.1, 1.0, 10.0, 100.0}) {
    const double w = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x);
    CHECK(w == doctest::Approx(2.0 / (kPi * x)).epsilon(1e-12));
  }
}

TEST_CASE("agreement with the integral-representation oracle on (0, 200]") {
  // grid spread over both regimes; mixed error with the amplitude envelope
  const double xs[] = {1e-3, 0.01, 0.1, 0.5, 1.0,  2.0,  3.0,  5.0,   7.0,   7.9,
                       8.0,  8.1,  9.0, 12,  17.0, 25.0, 40.0, 66.0, 101.0, 150.0,
                       200.0};
  for (const double x : xs) {
    const double env = std::sqrt(2.0 / (kPi * std::max(x, 1e-3)));
    auto check = [&](double got, double want) {
      const double scale = std::max(std::abs(want), env);
      CHECK(std::abs(got - want) / scale < 1e-13);
      if (std::abs(want) > 0.01 * env)
        CHECK(std::abs(got - want) / std::abs(want) < 1e-12);
    };
    check(bessel_j0(x), oracles::bessel_j_oracle(0, x));
    check(bessel_j1(x), oracles::bessel_j_oracle(1, x));
    check(bessel_y0(x), oracles::bessel_y_oracle(0, x));
    check(bessel_y1(x), oracles::bessel_y_oracle(1, x));
  }
}

TEST_CASE("derivative relation (H0)' = -H1 by central differences") {
  for (const double x : {0.7, 3.3, 12.5, 60.0}) {
    const double h = 1e-6;
    const Cx d = (hankel1(0, x + h) - hankel1(0, x - h)) / (2.0 * h);
    const Cx want = -hankel1(1, x);
    CHECK(std::abs(d - want) / std::abs(want) < 1e-8);
  }
}

TEST_CASE("leading-order asymptotic amplitude at x = 100") {
  const double amp = std::abs(hankel1(0, 100.0));
  CHECK(amp == doctest::Approx(std::sqrt(2.0 / (kPi * 100.0))).epsilon(0.01));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_y0(0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y1(-1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j0(-0.5), std::domain_error);
  CHECK_THROWS_AS(hankel1(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(hankel1(2, 1.0), std::invalid_argument);
}
