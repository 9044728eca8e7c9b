#include <doctest.h>

#include <cmath>
#include <random>

#include "elascat/kernels.hpp"
#include "elascat/specfun.hpp"
#include "oracles.hpp"

using namespace elascat;

namespace {

const ElasticMedium med_e(1, 1, 1, 8);
const ElasticMedium med_i(2, 2, 1, 8);

Cx oracle_hankel(int order, double x) {
  return {oracles::bessel_j_oracle(order, x), oracles::bessel_y_oracle(order, x)};
}

// Phi1/Phi2 evaluated through the integral-representation oracle only.
std::pair<Cx, Cx> phi12_oracle(const ElasticMedium& m, double t) {
  const double kp = m.kp(), ks = m.ks();
  const double rw2 = m.rho * m.omega * m.omega;
  const Cx h0s = oracle_hankel(0, ks * t), h1s = oracle_hankel(1, ks * t);
  const Cx h0p = oracle_hankel(0, kp * t), h1p = oracle_hankel(1, kp * t);
  const Cx phi1 = kImag / (4.0 * m.mu) * h0s -
                  kImag / (4.0 * rw2 * t) * (ks * h1s - kp * h1p);
  const Cx phi2 = kImag / (4.0 * rw2) *
                  (2.0 * ks / t * h1s - ks * ks * h0s - 2.0 * kp / t * h1p +
                   kp * kp * h0p);
  return {phi1, phi2};
}

}  // namespace

TEST_CASE("projection matrix J") {
  const Mat2c j1 = jmat({1, 0});
  CHECK(max_abs(j1 - Mat2c{1, 0, 0, 0}) < 1e-15);
  const double s = 1.0 / std::sqrt(2.0);
  const Mat2c j2 = jmat({s, s});
  CHECK(max_abs(j2 - Mat2c{0.5, 0.5, 0.5, 0.5}) < 1e-15);
  // idempotent, symmetric, trace one
  CHECK(max_abs(j2 * j2 - j2) < 1e-15);
  CHECK(std::abs(j2.a11 + j2.a22 - Cx(1.0)) < 1e-15);
}

TEST_CASE("phi12 against the extended-precision oracle, with pinned regression") {
  const auto [p1, p2] = phi12(med_e, 0.5);
  const auto [o1, o2] = phi12_oracle(med_e, 0.5);
  CHECK(std::abs(p1 - o1) / std::abs(o1) < 1e-12);
  CHECK(std::abs(p2 - o2) / std::abs(o2) < 1e-12);
  // regression constants from the oracle run
  CHECK(p1.real() == doctest::Approx(0.027051521311408817).epsilon(1e-12));
  CHECK(p1.imag() == doctest::Approx(-0.075740131592536883).epsilon(1e-12));
  CHECK(p2.real() == doctest::Approx(-0.092998031083543042).epsilon(1e-12));
  CHECK(p2.imag() == doctest::Approx(0.056398841504211816).epsilon(1e-12));
  CHECK_THROWS_AS(phi12(med_e, 0.0), std::domain_error);
}

TEST_CASE("fundamental tensor: symmetry and the gradient-form route") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec2 x{uni(rng), uni(rng)};
    Vec2 y{uni(rng), uni(rng)};
    if (norm(x - y) < 0.05) y.x += 0.5;
    const Mat2c t = fundamental_tensor(med_e, x, y);
    CHECK(max_abs(t - transpose(t)) < 1e-13 * max_abs(t));
    CHECK(max_abs(t - fundamental_tensor(med_e, y, x)) < 1e-13 * max_abs(t));

    // second route: (i/4mu) H0(ks d) I + (i/4 rho w^2) grad grad [H0s - H0p]
    const double d = norm(x - y);
    const Vec2 rhat = (x - y) / d;
    const double kp = med_e.kp(), ks = med_e.ks();
    const auto hs = specfun::hankel_pair(ks * d);
    const auto hp = specfun::hankel_pair(kp * d);
    const Cx gp = -ks * hs.h1 + kp * hp.h1;
    const Cx gpp = -ks * ks * hs.h0 + ks * hs.h1 / d + kp * kp * hp.h0 - kp * hp.h1 / d;
    const Cx i4rw = kImag / (4.0 * med_e.rho * med_e.omega * med_e.omega);
    Mat2c route2 = (kImag / (4.0 * med_e.mu) * hs.h0) * identity2();
    route2 = route2 + i4rw * gpp * outer(rhat, rhat);
    route2 = route2 + i4rw * (gp / d) * (identity2() - outer(rhat, rhat));
    CHECK(max_abs(t - route2) < 1e-12 * max_abs(t));
  }
}

TEST_CASE("static tensor: Kelvin coefficients, boundedness, scaling") {
  // J-part coefficient (lambda+mu)/(4 pi mu (lambda+2mu)) = 1/(6 pi) for lambda=mu=1
  const Mat2c s = static_fundamental(med_e, {0, 0}, {1, 0});
  CHECK(s.a11.real() - s.a22.real() == doctest::Approx(1.0 / (6.0 * kPi)).epsilon(1e-13));
  CHECK(std::abs(s.a12) < 1e-16);

  // difference dynamic - static stays bounded approaching the singular point
  double prev = 0.0;
  for (const double d : {1e-4, 1e-6, 1e-8}) {
    const Mat2c diff =
        fundamental_tensor(med_e, {0, 0}, {d, 0}) - static_fundamental(med_e, {0, 0}, {d, 0});
    const double v = max_abs(diff);
    CHECK(v < 1.0);
    if (prev != 0.0) CHECK(std::abs(v - prev) < 0.05 * prev + 1e-6);
    prev = v;
  }

  // homogeneity: scaling (lambda, mu) by c scales the tensor by 1/c
  const ElasticMedium m2(2.0 * med_e.lambda, 2.0 * med_e.mu, 1, 8);
  const Mat2c s2 = static_fundamental(m2, {0.1, 0.2}, {0.7, -0.4});
  const Mat2c s1 = static_fundamental(med_e, {0.1, 0.2}, {0.7, -0.4});
  CHECK(max_abs(s2 - 0.5 * s1) < 1e-14);
}

TEST_CASE("traction kernels match finite-difference application of T") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int checked = 0;
  while (checked < 100) {
    const Vec2 x{uni(rng), uni(rng)};
    const Vec2 y{uni(rng), uni(rng)};
    if (norm(x - y) < 0.2) continue;
    ++checked;
    const double an = uni(rng) * kPi, am = uni(rng) * kPi;
    const Vec2 nx{std::cos(an), std::sin(an)};
    const Vec2 ny{std::cos(am), std::sin(am)};
    const ElasticMedium& m = (checked % 2 == 0) ? med_e : med_i;

    // L-kernel: traction in x of Phi(x, y)
    const Mat2c l_got = single_traction_kernel(m, x, nx, y);
    const Mat2c l_want = oracles::traction_fd_matrix(
        m, [&](Vec2 q) { return fundamental_tensor(m, q, y); }, x, nx);
    CHECK(oracles::rel_err(l_got, l_want) < 1e-6);

    // K-kernel: traction in y of Phi(x, y), transposed
    const Mat2c k_got = double_layer_kernel(m, x, y, ny);
    const Mat2c k_want = transpose(oracles::traction_fd_matrix(
        m, [&](Vec2 q) { return fundamental_tensor(m, x, q); }, y, ny));
    CHECK(oracles::rel_err(k_got, k_want) < 1e-6);

    // static variants
    const Mat2c ls_got = static_single_traction_kernel(m, x, nx, y);
    const Mat2c ls_want = oracles::traction_fd_matrix(
        m, [&](Vec2 q) { return static_fundamental(m, q, y); }, x, nx);
    CHECK(oracles::rel_err(ls_got, ls_want) < 1e-6);

    const Mat2c ks_got = static_double_layer_kernel(m, x, y, ny);
    const Mat2c ks_want = transpose(oracles::traction_fd_matrix(
        m, [&](Vec2 q) { return static_fundamental(m, x, q); }, y, ny));
    CHECK(oracles::rel_err(ks_got, ks_want) < 1e-6);
  }
}

TEST_CASE("antipodal points on a circle give finite double-layer values") {
  const Vec2 x{1.0, 0.0}, y{-1.0, 0.0};
  const Mat2c k = double_layer_kernel(med_e, x, y, {-1.0, 0.0});
  const Mat2c want = transpose(oracles::traction_fd_matrix(
      med_e, [&](Vec2 q) { return fundamental_tensor(med_e, x, q); }, y, {-1.0, 0.0}));
  CHECK(oracles::rel_err(k, want) < 1e-6);
}

TEST_CASE("hyper difference kernel matches finite-difference outer traction") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int checked = 0;
  while (checked < 40) {
    const Vec2 x{uni(rng), uni(rng)};
    const Vec2 y{uni(rng), uni(rng)};
    if (norm(x - y) < 0.3) continue;
    ++checked;
    const double an = uni(rng) * kPi, am = uni(rng) * kPi;
    const Vec2 nx{std::cos(an), std::sin(an)};
    const Vec2 ny{std::cos(am), std::sin(am)};
    const ElasticMedium& m = (checked % 2 == 0) ? med_e : med_i;
    const Mat2c got = hyper_difference_kernel(m, x, nx, y, ny);
    const Mat2c want = oracles::traction_fd_matrix(
        m,
        [&](Vec2 q) {
          return double_layer_kernel(m, q, y, ny) - static_double_layer_kernel(m, q, y, ny);
        },
        x, nx);
    CHECK(oracles::rel_err(got, want) < 1e-6);
  }
}

TEST_CASE("combined hypersingular kernel grows at most logarithmically") {
  auto scan = [&](auto&& kernel) {
    // points on the unit circle approaching each other
    std::vector<double> lds, vals;
    for (const double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      const double th = 2.0 * std::asin(0.5 * d);
      const Vec2 x{1, 0}, y{std::cos(th), std::sin(th)};
      const Vec2 nx{1, 0}, ny{std::cos(th), std::sin(th)};
      lds.push_back(std::log(norm(x - y)));
      vals.push_back(max_abs(kernel(x, nx, y, ny)));
    }
    // least squares |K| = c1 + c2 |ln d|
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = lds.size();
    for (int i = 0; i < n; ++i) {
      sx += lds[i];
      sy += vals[i];
      sxx += lds[i] * lds[i];
      sxy += lds[i] * vals[i];
    }
    const double c2 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double c1 = (sy - c2 * sx) / n;
    double max_res = 0, max_val = 0;
    for (int i = 0; i < n; ++i) {
      max_res = std::max(max_res, std::abs(c1 + c2 * lds[i] - vals[i]));
      max_val = std::max(max_val, std::abs(vals[i]));
    }
    CHECK(max_res < 0.05 * max_val);
  };
  scan([&](Vec2 x, Vec2 nx, Vec2 y, Vec2 ny) {
    return combined_hyper_kernel(med_i, med_e, x, nx, y, ny);
  });
  scan([&](Vec2 x, Vec2 nx, Vec2 y, Vec2 ny) {
    return hyper_difference_kernel(med_e, x, nx, y, ny);
  });
  scan([&](Vec2 x, Vec2 nx, Vec2 y, Vec2 ny) {
    return hyper_difference_kernel(med_i, x, nx, y, ny);
  });
}

TEST_CASE("far-field coefficients and kernels") {
  const FarFieldCoeffs c = farfield_coeffs(med_e);
  // gamma = -i k beta, both polarizations
  CHECK(std::abs(c.gamma_p - (-kImag * med_e.kp() * c.beta_p)) < 1e-15);
  CHECK(std::abs(c.gamma_s - (-kImag * med_e.ks() * c.beta_s)) < 1e-15);

  for (const double a : {0.0, 0.7, 2.1}) {
    const Vec2 xhat{std::cos(a), std::sin(a)};
    const Mat2c jp = jmat(xhat);
    const Mat2c js = identity2() - jp;
    CHECK(max_abs(jp * js) < 1e-15);
    CHECK(max_abs(jp * jp - jp) < 1e-15);
    CHECK(max_abs(js * js - js) < 1e-15);
  }

  // F((1,0), n=(0,1)) = [[0, lambda],[mu, 0]]
  const Mat2c f = fmat(med_e, {1, 0}, {0, 1});
  CHECK(max_abs(f - Mat2c{0, med_e.lambda, med_e.mu, 0}) < 1e-15);

  // y = 0: phase factor is one
  const Mat2c s0 = farfield_single_kernel(med_e, WaveKind::P, {1, 0}, {0, 0});
  CHECK(max_abs(s0 - c.beta_p * jmat({1, 0})) < 1e-16);
}

TEST_CASE("Frechet kernels") {
  // q = 0 gives vanishing kernels
  const Mat2c g0 = frechet_G(med_e, WaveKind::P, {1, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 0});
  CHECK(max_abs(g0) == 0.0);
  CHECK(std::abs(frechet_g(med_e, WaveKind::P, {1, 0}, {0, 1}, {0, 0}, {0, 0})) == 0.0);

  // unit circle, radial q = 1, tau = 0, xhat = (1,0): g = 1 - i k
  const Cx g = frechet_g(med_e, WaveKind::P, {1, 0}, {0, 1}, {1, 0}, {0, 1});
  CHECK(std::abs(g - (Cx(1.0) - kImag * med_e.kp())) < 1e-15);
}

TEST_CASE("small-distance series constants match the kernels") {
  for (const ElasticMedium& m : {med_e, med_i}) {
    const auto sc = detail::series_constants(m);
    const double a = sc.a;
    // distances small enough for the expansion, large enough that the
    // Hankel-route evaluation of Phi1/Phi2 keeps full accuracy
    const double d1 = 2e-3, d2 = 1e-3;
    auto psi1 = [&](double d) { return phi12(m, d).first + a * std::log(d); };
    auto psi2 = [&](double d) { return phi12(m, d).second - sc.b; };
    // E(d) = (psi1 - rphi10)/d^2 = c12L ln d + c12 + O(d^2 ln d)
    const Cx e1 = (psi1(d1) - sc.rphi10) / (d1 * d1);
    const Cx e2 = (psi1(d2) - sc.rphi10) / (d2 * d2);
    const Cx c12L = (e1 - e2) / (std::log(d1) - std::log(d2));
    const Cx c12 = e1 - c12L * std::log(d1);
    CHECK(std::abs(c12L - Cx(sc.c12L)) < 5e-3 * std::abs(Cx(sc.c12L)));
    CHECK(std::abs(c12 - sc.c12) < 5e-3 * std::abs(sc.c12));
    // removing the fitted d^2 terms recovers the constant part
    const Cx rphi10_fit = psi1(d2) - (c12L * std::log(d2) + c12) * (d2 * d2);
    CHECK(std::abs(rphi10_fit - sc.rphi10) < 1e-8);
    const Cx f1 = psi2(d1) / (d1 * d1);
    const Cx f2 = psi2(d2) / (d2 * d2);
    const Cx c22L = (f1 - f2) / (std::log(d1) - std::log(d2));
    const Cx c22 = f1 - c22L * std::log(d1);
    CHECK(std::abs(c22L - Cx(sc.c22L)) < 5e-3 * std::abs(Cx(sc.c22L)));
    CHECK(std::abs(c22 - sc.c22) < 5e-3 * std::abs(sc.c22));
  }
}

TEST_CASE("hyper difference kernel is consistent across the series switch") {
  // the small-distance series path and the Hankel-subtraction path must agree
  // where both are accurate, and with the finite-difference oracle below the
  // switch distance
  for (const ElasticMedium& m : {med_e, med_i}) {
    const double d_lo = 0.9 / m.ks(), d_hi = 1.1 / m.ks();
    const Vec2 x{0.3, -0.2}, nx{0.6, 0.8};
    const Vec2 ny{-0.8, 0.6};
    const Mat2c k_lo = hyper_difference_kernel(m, x, nx, {x.x + d_lo, x.y}, ny);
    const Mat2c k_hi = hyper_difference_kernel(m, x, nx, {x.x + d_hi, x.y}, ny);
    CHECK(max_abs(k_lo - k_hi) < 0.5 * std::max(max_abs(k_lo), max_abs(k_hi)));
    for (const double d : {0.03, 0.08}) {
      const Vec2 y{x.x + d * 0.6, x.y + d * 0.8};
      const Mat2c got = hyper_difference_kernel(m, x, nx, y, ny);
      const Mat2c want = oracles::traction_fd_matrix(
          m,
          [&](Vec2 q) {
            return double_layer_kernel(m, q, y, ny) -
                   static_double_layer_kernel(m, q, y, ny);
          },
          x, nx);
      CHECK(oracles::rel_err(got, want) < 1e-5);
    }
  }
}

TEST_CASE("split-kernel diagonals agree with near-diagonal extrapolation") {
  const BoundaryCurve curve = apple();
  for (const ElasticMedium& m : {med_e, med_i}) {
    const SplitKernel kernels[] = {
        single_layer_split(m, curve), double_layer_split(m, curve),
        traction_split(m, curve), hyper_difference_split(m, curve)};
    for (const SplitKernel& k : kernels) {
      for (const double t : {0.4, 2.9}) {
        auto remainder = [&](double u) {
          const double tau = t + u;
          Mat2c b = k.full(t, tau);
          const double lg = std::log(4.0 * std::pow(std::sin(0.5 * (t - tau)), 2));
          b = b - lg * k.k1(t, tau);
          if (k.cauchy) b = b - (1.0 / std::tan(0.5 * (tau - t))) * k.cauchy(t, tau);
          return b;
        };
        const Mat2c want = oracles::extrapolate_even_diagonal(
            [&](double u) { return 0.5 * (remainder(u) + remainder(-u)); }, 4e-3);
        const Mat2c got = k.b_diag(t);
        const double scale = std::max(max_abs(want), 1.0);
        CHECK(max_abs(got - want) / scale < 1e-8);
        // log coefficient continuity onto the diagonal
        const Mat2c k1lim = oracles::extrapolate_even_diagonal(
            [&](double u) { return 0.5 * (k.k1(t, t + u) + k.k1(t, t - u)); }, 4e-3);
        CHECK(max_abs(k.k1(t, t) - k1lim) < 1e-8 * std::max(max_abs(k1lim), 1.0));
      }
    }
  }
}

TEST_CASE("static hyper kernel obeys the Hilbert-form decomposition") {
  // (2 pi |z'| / c) N0 - (1/2) csc^2 stays bounded toward the diagonal
  const BoundaryCurve curve = apple();
  const double cj = static_hyper_constant(med_e);
  const double t = 1.1;
  const double sp = frame(curve, t).speed;
  double prev = 0.0;
  for (const double u : {1e-2, 1e-3, 1e-4}) {
    const Mat2c khat = (2.0 * kPi * sp / cj) * static_hyper_full(med_e, curve, t, t + u) -
                       Cx(0.5 / std::pow(std::sin(0.5 * u), 2)) * identity2();
    const double v = max_abs(khat);
    CHECK(v < 100.0);
    if (prev != 0.0) CHECK(v < 3.0 * prev + 1.0);
    prev = v;
  }
}

TEST_CASE("far-field kernels integrate spectrally over a smooth curve") {
  // entire kernels: the trapezoidal far-field quadrature collapses fast
  const BoundaryCurve c = peanut();
  const Vec2 xhat{std::cos(0.4), std::sin(0.4)};
  auto value = [&](int n) {
    Vec2c acc{};
    const CollocationGrid grid(n);
    for (int j = 0; j < grid.size(); ++j) {
      const CurveFrame f = frame(c, grid.nodes[j]);
      const Vec2c dens{Cx(std::exp(std::cos(grid.nodes[j]))),
                       Cx(std::sin(grid.nodes[j]), 0.5)};
      acc = acc + (kPi / n * f.speed) *
                      (farfield_single_kernel(med_e, WaveKind::S, xhat, f.z) * dens);
    }
    return acc;
  };
  const Vec2c ref = value(256);
  const double e32 = norm(value(32) - ref);
  const double e64 = norm(value(64) - ref);
  CHECK(e32 / std::max(e64, 1e-18) > 1e3);
}
