#include "elascat/kernels.hpp"

#include <cmath>

#include "elascat/specfun.hpp"

// Closed-form kernels built from the radial parts of the fundamental tensor
//   Psi(x,y) = psi1(d) I + psi2(d) shat shat^T,  shat = (y-x)/d,
// their tractions, and the traction-traction second derivatives.  All
// d-derivatives reduce to Hankel recurrences; the log splits track the same
// expressions through the J-Bessel analog of each radial function, and the
// diagonal limits come from the small-d series coefficients.

namespace elascat {

namespace {

using specfun::hankel_pair;

struct RadialPrimitives {
  Cx psi1{0.0}, psi2{0.0};
  Cx dpsi1{0.0}, dpsi2{0.0};       // first derivatives
  Cx ddpsi1{0.0}, ddpsi2{0.0};     // second derivatives
  Cx dpsi1_od{0.0}, dpsi2_od{0.0}; // psi1'/d, psi2'/d
  Cx psi2_od{0.0}, psi2_od2{0.0};  // psi2/d, psi2/d^2
};

RadialPrimitives operator-(const RadialPrimitives& x, const RadialPrimitives& y) {
  RadialPrimitives r;
  r.psi1 = x.psi1 - y.psi1;
  r.psi2 = x.psi2 - y.psi2;
  r.dpsi1 = x.dpsi1 - y.dpsi1;
  r.dpsi2 = x.dpsi2 - y.dpsi2;
  r.ddpsi1 = x.ddpsi1 - y.ddpsi1;
  r.ddpsi2 = x.ddpsi2 - y.ddpsi2;
  r.dpsi1_od = x.dpsi1_od - y.dpsi1_od;
  r.dpsi2_od = x.dpsi2_od - y.dpsi2_od;
  r.psi2_od = x.psi2_od - y.psi2_od;
  r.psi2_od2 = x.psi2_od2 - y.psi2_od2;
  return r;
}

// Radial stack from a cylinder-function pair B0, B1 evaluated at kp*d, ks*d.
// B = H^(1) gives the dynamic parts; B = (2i/pi) J gives the ln d coefficient
// of every entry.
RadialPrimitives radial_from_pairs(const ElasticMedium& med, double d, Cx b0p,
                                   Cx b1p, Cx b0s, Cx b1s) {
  const double kp = med.kp(), ks = med.ks();
  const double rw2 = med.rho * med.omega * med.omega;
  const Cx i4mu = kImag / (4.0 * med.mu);
  const Cx i4rw = kImag / (4.0 * rw2);

  const Cx U = (ks * b1s - kp * b1p) / d;
  const Cx V = ks * ks * b0s - kp * kp * b0p;
  const Cx dU = V / d - 2.0 * U / d;
  const Cx dV = -ks * ks * ks * b1s + kp * kp * kp * b1p;
  const Cx ddU = dV / d - V / (d * d) - 2.0 * dU / d + 2.0 * U / (d * d);
  const Cx ddV =
      -ks * ks * ks * (ks * b0s - b1s / d) + kp * kp * kp * (kp * b0p - b1p / d);

  RadialPrimitives r;
  r.psi1 = i4mu * b0s - i4rw * U;
  r.dpsi1 = -i4mu * (ks * b1s) - i4rw * dU;
  r.ddpsi1 = -i4mu * ks * (ks * b0s - b1s / d) - i4rw * ddU;
  r.psi2 = i4rw * (2.0 * U - V);
  r.dpsi2 = i4rw * (2.0 * dU - dV);
  r.ddpsi2 = i4rw * (2.0 * ddU - ddV);
  r.dpsi1_od = r.dpsi1 / d;
  r.dpsi2_od = r.dpsi2 / d;
  r.psi2_od = r.psi2 / d;
  r.psi2_od2 = r.psi2 / (d * d);
  return r;
}

RadialPrimitives dynamic_primitives(const ElasticMedium& med, double d) {
  const auto hp = hankel_pair(med.kp() * d);
  const auto hs = hankel_pair(med.ks() * d);
  return radial_from_pairs(med, d, hp.h0, hp.h1, hs.h0, hs.h1);
}

struct KelvinConstants {
  double a, b;
};

KelvinConstants kelvin_constants(const ElasticMedium& med) {
  const double den = 4.0 * kPi * med.mu * (med.lambda + 2.0 * med.mu);
  return {(med.lambda + 3.0 * med.mu) / den, (med.lambda + med.mu) / den};
}

RadialPrimitives static_primitives(const ElasticMedium& med, double d) {
  const auto [a, b] = kelvin_constants(med);
  RadialPrimitives r;
  r.psi1 = -a * std::log(d);
  r.dpsi1 = -a / d;
  r.ddpsi1 = a / (d * d);
  r.dpsi1_od = -a / (d * d);
  r.psi2 = b;
  r.psi2_od = b / d;
  r.psi2_od2 = b / (d * d);
  return r;
}

// ---------------------------------------------------------------------------
// Cancellation-free small-distance path.  The pole and log singularities of
// the Hankel combinations cancel analytically in the dynamic-minus-static and
// log-slope stacks, so near the diagonal those stacks are evaluated from even
// power series sum (c_m + l_m ln d) d^{2m} instead of subtracting large terms.

struct LogSeries {
  std::vector<Cx> c, l;  // coefficients of d^{2m} and d^{2m} ln d
};

void series_eval(const LogSeries& s, double d, Cx& value, Cx& deriv, Cx& second) {
  const double q = d * d;
  const double ln = std::log(d);
  Cx v(0.0), vd(0.0), vdd(0.0);
  double qm = 1.0;
  for (std::size_t m = 0; m < s.c.size(); ++m, qm *= q) {
    const double m2 = 2.0 * static_cast<double>(m);
    const Cx cm = s.c[m], lm = s.l.empty() ? Cx(0.0) : s.l[m];
    v += (cm + lm * ln) * qm;
    vd += (m2 * cm + lm + m2 * lm * ln) * qm;
    vdd += (m2 * (m2 - 1.0) * cm + (2.0 * m2 - 1.0) * lm + m2 * (m2 - 1.0) * lm * ln) * qm;
  }
  value = v;
  deriv = vd / d;
  second = vdd / q;
}

RadialPrimitives series_primitives(const LogSeries& s1, const LogSeries& s2, double d) {
  RadialPrimitives r;
  series_eval(s1, d, r.psi1, r.dpsi1, r.ddpsi1);
  series_eval(s2, d, r.psi2, r.dpsi2, r.ddpsi2);
  r.dpsi1_od = r.dpsi1 / d;
  r.dpsi2_od = r.dpsi2 / d;
  r.psi2_od = r.psi2 / d;
  r.psi2_od2 = r.psi2 / (d * d);
  return r;
}

// Per-medium series: the dynamic-minus-static radial parts and the J-Bessel
// analogs (log-slope stacks, already carrying the 2i/pi factor).
struct MediumSeries {
  LogSeries psi1_diff, psi2_diff;
  LogSeries jphi1, jphi2;  // no log parts
  double switch_z = 1.0;   // series used for ks * d <= switch_z
};

MediumSeries build_medium_series(const ElasticMedium& med) {
  constexpr int M = 20;
  const double kp = med.kp(), ks = med.ks();
  const double rw2 = med.rho * med.omega * med.omega;
  const Cx i4mu = kImag / (4.0 * med.mu);
  const Cx i4rw = kImag / (4.0 * rw2);
  const Cx tip = 2.0 * kImag / kPi;
  const double ls = std::log(ks / 2.0) + kEulerGamma;
  const double lp = std::log(kp / 2.0) + kEulerGamma;

  // base even series in z: C = J0, A = J1(z)/z, D = y0e, B = y1e(z)/z
  std::vector<double> C(M + 2), A(M + 2), D(M + 2), B(M + 2);
  double fact = 1.0, fact1 = 1.0, pow4 = 1.0, hm = 0.0, hm1 = 1.0;
  for (int m = 0; m <= M + 1; ++m) {
    if (m > 0) {
      fact *= m;
      fact1 *= (m + 1);
      pow4 *= 4.0;
      hm += 1.0 / m;
      hm1 += 1.0 / (m + 1);
    }
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    C[m] = sign / (pow4 * fact * fact);
    A[m] = sign / (2.0 * pow4 * fact * fact1);
    D[m] = m == 0 ? 0.0 : (2.0 / kPi) * (-sign) * hm / (pow4 * fact * fact);
    B[m] = -(1.0 / (2.0 * kPi)) * sign * (hm + hm1) / (pow4 * fact * fact1);
  }

  MediumSeries out;
  out.psi1_diff.c.resize(M + 1);
  out.psi1_diff.l.resize(M + 1);
  out.psi2_diff.c.resize(M + 1);
  out.psi2_diff.l.resize(M + 1);
  out.jphi1.c.resize(M + 1);
  out.jphi2.c.resize(M + 1);

  double ks2m = 1.0, kp2m = 1.0;  // k^{2m}
  for (int m = 0; m <= M; ++m) {
    const double ks_p2 = ks2m * ks * ks, kp_p2 = kp2m * kp * kp;
    // Phi1 = (i/4mu) H0(ks d) - (i/(4 rho w^2 d)) [ks H1(ks d) - kp H1(kp d)]
    out.psi1_diff.c[m] =
        i4mu * (ks2m * (C[m] * (1.0 + tip * ls) + kImag * D[m])) -
        i4rw * (ks_p2 * (A[m] * (1.0 + tip * ls) + kImag * B[m]) -
                kp_p2 * (A[m] * (1.0 + tip * lp) + kImag * B[m]));
    out.psi1_diff.l[m] = tip * (i4mu * ks2m * C[m] - i4rw * A[m] * (ks_p2 - kp_p2));
    out.jphi1.c[m] = out.psi1_diff.l[m];
    if (m >= 1) {
      // Phi2 per wavenumber: k^2 [ (2A - C) (1 + (2i/pi)(ln d + l_k))
      //                            + i (2B - D) ], constant part = Kelvin b
      const double e = 2.0 * A[m] - C[m];
      const double f = 2.0 * B[m] - D[m];
      out.psi2_diff.c[m] = i4rw * (ks_p2 * (e * (1.0 + tip * ls) + kImag * f) -
                                   kp_p2 * (e * (1.0 + tip * lp) + kImag * f));
      out.psi2_diff.l[m] = i4rw * tip * e * (ks_p2 - kp_p2);
      out.jphi2.c[m] = out.psi2_diff.l[m];
    }
    ks2m *= ks * ks;
    kp2m *= kp * kp;
  }
  // psi1 = Phi1 + a ln d: the order-zero log coefficient cancels exactly
  out.psi1_diff.l[0] = Cx(0.0);
  return out;
}

RadialPrimitives diff_primitives(const ElasticMedium& med, const MediumSeries& series,
                                 double d) {
  if (med.ks() * d <= series.switch_z)
    return series_primitives(series.psi1_diff, series.psi2_diff, d);
  return dynamic_primitives(med, d) - static_primitives(med, d);
}

// Coefficient of ln d of every stack entry: the J-analog (times 2i/pi).
RadialPrimitives logslope_primitives(const ElasticMedium& med, const MediumSeries& series,
                                     double d) {
  if (med.ks() * d <= series.switch_z)
    return series_primitives(series.jphi1, series.jphi2, d);
  const Cx f = 2.0 * kImag / kPi;
  const double zp = med.kp() * d, zs = med.ks() * d;
  return radial_from_pairs(med, d, f * specfun::bessel_j0(zp),
                           f * specfun::bessel_j1(zp), f * specfun::bessel_j0(zs),
                           f * specfun::bessel_j1(zs));
}

// T Psi with respect to the variable whose unit offset is u (pointing from
// the other point toward the differentiation point), normal nrm.
Mat2c traction_of_radial(const RadialPrimitives& p, double lambda, double mu,
                         Vec2 u, Vec2 nrm) {
  const Cx sigma = p.dpsi1 + p.dpsi2 + p.psi2_od;
  const Cx delta = p.dpsi1 - p.psi2_od;
  const double nu = dot(nrm, u);
  Mat2c out = (lambda * sigma) * outer(nrm, u);
  out = out + (2.0 * mu * nu * p.dpsi1) * identity2();
  out = out + (2.0 * mu * nu * p.dpsi2) * outer(u, u);
  out = out +
        (2.0 * mu * p.psi2_od) * (outer(u, nrm) + outer(nrm, u) - (2.0 * nu) * outer(u, u));
  out = out - (mu * delta) * outer(qrot(nrm), qrot(u));
  return out;
}

// Derivative combinations feeding the traction-traction composition: for each
// coefficient g(d) of the first traction, its derivative (suffix p) and g/d
// (suffix d).
struct HyperSlots {
  Cx g1p, g1d, g2p, g2d, gCp, gCd, g4p, g4d, g7p, g7d;
};

HyperSlots make_slots(double lambda, double mu, Cx ddpsi1, Cx dpsi1_od, Cx ddpsi2,
                      Cx dpsi2_od, Cx psi2_od2, Cx dpsi2od) {
  HyperSlots s;
  s.g1p = lambda * (ddpsi1 + ddpsi2 + dpsi2od);
  s.g1d = lambda * (dpsi1_od + dpsi2_od + psi2_od2);
  s.g2p = 2.0 * mu * ddpsi1;
  s.g2d = 2.0 * mu * dpsi1_od;
  s.gCp = 2.0 * mu * ddpsi2 - 4.0 * mu * dpsi2od;
  s.gCd = 2.0 * mu * dpsi2_od - 4.0 * mu * psi2_od2;
  s.g4p = 2.0 * mu * dpsi2od;
  s.g4d = 2.0 * mu * psi2_od2;
  s.g7p = -mu * (ddpsi1 - dpsi2od);
  s.g7d = -mu * (dpsi1_od - psi2_od2);
  return s;
}

HyperSlots slots_from_primitives(const RadialPrimitives& p, double lambda, double mu) {
  return make_slots(lambda, mu, p.ddpsi1, p.dpsi1_od, p.ddpsi2, p.dpsi2_od,
                    p.psi2_od2, p.dpsi2_od - p.psi2_od2);
}

// T_x [T_y Psi]^T assembled column by column from the slot values; valid
// off-diagonal with the true radial functions and on the diagonal with their
// limit constants (shat -> tangent, m = n = normal).
Mat2c hyper_compose(const HyperSlots& g, Vec2 shat, Vec2 m, Vec2 n, double lambda,
                    double mu) {
  Mat2c out;
  const double nm = dot(n, m);
  const double msh = dot(m, shat);
  const double nsh = dot(n, shat);
  const Vec2 qm = qrot(m), qn = qrot(n);
  const double cr_sm = cross(shat, m);
  const Vec2c shat_c = to_complex(shat), n_c = to_complex(n), m_c = to_complex(m);
  const Vec2 e[2] = {{1.0, 0.0}, {0.0, 1.0}};
  for (int col = 0; col < 2; ++col) {
    const Vec2 ev = e[col];
    const double me = dot(m, ev), ne = dot(n, ev), se = dot(shat, ev);
    const double qme = dot(qm, ev);
    const double cr_se = cross(shat, ev), cr_me = cross(m, ev);

    const Cx div = -me * (g.g1p + g.g1d + g.g2d + g.g4p + 2.0 * g.g4d) +
                   (msh * se) * (-g.g2p + g.g2d - g.gCp - g.gCd - g.g4p + g.g4d);

    // cross(e, shat) = -cr_se, cross(m, shat) = -cr_sm, cross(e, m) = -cr_me
    const Cx rot = -g.g2p * msh * cr_se + g.g2d * (msh * cr_se - cr_me) -
                   g.gCd * (se * (-cr_sm) + msh * (-cr_se)) - g.g4p * se * cr_sm +
                   g.g4d * (se * cr_sm + cr_me) + qme * (g.g7p + g.g7d);

    Vec2c grad{};  // (n . grad) of the column
    // shapes A (coefficients g1 and g4, both carrying (m.e))
    grad = grad + (me * ((g.g1d + g.g4d - g.g1p - g.g4p) * nsh)) * shat_c;
    grad = grad - (me * (g.g1d + g.g4d)) * n_c;
    // shape B
    grad = grad + (-g.g2p * msh * nsh + g.g2d * (msh * nsh - nm)) * to_complex(ev);
    // shape C
    const Cx cphi =
        -g.gCp * msh * se * nsh + g.gCd * (-nm * se - ne * msh + 2.0 * msh * se * nsh);
    grad = grad + cphi * shat_c + (g.gCd * msh * se) * (nsh * shat_c - n_c);
    // shape D
    grad = grad + (-g.g4p * se * nsh + g.g4d * (se * nsh - ne)) * m_c;
    // shape A' (Q-rotated field)
    const Vec2c ap = (-g.g7p * nsh) * shat_c + g.g7d * (nsh * shat_c - n_c);
    grad = grad + qme * Vec2c{ap.y, -ap.x};

    const Vec2c columnv =
        (lambda * div) * n_c + (2.0 * mu) * grad + (mu * rot) * to_complex(qn);
    if (col == 0) {
      out.a11 = columnv.x;
      out.a21 = columnv.y;
    } else {
      out.a12 = columnv.x;
      out.a22 = columnv.y;
    }
  }
  return out;
}

struct PairGeometry {
  Vec2 s;      // z(tau) - z(t)
  double d;    // |s|
  Vec2 shat;   // s/d
  CurveFrame ft, ftau;
};

PairGeometry pair_geometry(const BoundaryCurve& curve, double t, double tau) {
  PairGeometry g;
  g.ft = frame(curve, t);
  g.ftau = frame(curve, tau);
  g.s = g.ftau.z - g.ft.z;
  g.d = norm(g.s);
  if (!(g.d > 0.0)) throw NumericalError("pair_geometry: coincident points");
  g.shat = g.s / g.d;
  return g;
}

bool near_diagonal(double t, double tau) {
  const double u = std::remainder(t - tau, 2.0 * kPi);
  return std::abs(u) < 1e-9;
}

// Remainder of s/d^2 after removing (1/2) cot((tau-t)/2) z'(tau)/|z'(tau)|^2,
// evaluated on the diagonal.
Vec2 cauchy_remainder_diag(const CurveFrame& f) {
  const double p = dot(f.d1, f.d2) / (f.speed * f.speed);
  const Vec2 v = p * f.d1 - 0.5 * f.d2;
  return v / (f.speed * f.speed);
}

}  // namespace

namespace detail {

SeriesConstants series_constants(const ElasticMedium& med) {
  const double kp = med.kp(), ks = med.ks();
  const double rw2 = med.rho * med.omega * med.omega;
  const double mu = med.mu;
  const double ls = std::log(ks / 2.0) + kEulerGamma;
  const double lp = std::log(kp / 2.0) + kEulerGamma;
  const double ks2 = ks * ks, kp2 = kp * kp;
  const double ks4 = ks2 * ks2, kp4 = kp2 * kp2;

  SeriesConstants c;
  const auto kel = kelvin_constants(med);
  c.a = kel.a;
  c.b = kel.b;
  c.c12L = ks2 / (8.0 * kPi * mu) - (ks4 - kp4) / (32.0 * kPi * rw2);
  c.c22L = -(ks4 - kp4) / (16.0 * kPi * rw2);
  c.c12 = -kImag * ks2 / (16.0 * mu) + ks2 * ls / (8.0 * kPi * mu) -
          ks2 / (8.0 * kPi * mu) + kImag * (ks4 - kp4) / (64.0 * rw2) -
          (ks4 * ls - kp4 * lp) / (32.0 * kPi * rw2) +
          5.0 * (ks4 - kp4) / (128.0 * kPi * rw2);
  c.c22 = kImag * (ks4 - kp4) / (32.0 * rw2) -
          (ks4 * ls - kp4 * lp) / (16.0 * kPi * rw2) +
          3.0 * (ks4 - kp4) / (64.0 * kPi * rw2);
  c.rphi10 = (kImag / (4.0 * mu)) * (1.0 + (2.0 * kImag / kPi) * ls) -
             (kImag / (4.0 * rw2)) *
                 (0.5 * (ks2 - kp2) + (kImag / kPi) * (ks2 * ls - kp2 * lp) -
                  (kImag / kPi) * 0.5 * (ks2 - kp2));
  c.jphi10 = kImag / (4.0 * mu) - kImag * (ks2 - kp2) / (8.0 * rw2);
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point-pair kernels.

Mat2c jmat(Vec2 x) {
  const double n2 = dot(x, x);
  if (!(n2 > 0.0)) throw std::domain_error("jmat: zero vector");
  Mat2c m = outer(x, x);
  return (1.0 / n2) * m;
}

std::pair<Cx, Cx> phi12(const ElasticMedium& med, double t) {
  if (!(t > 0.0)) throw std::domain_error("phi12: distance must be positive");
  const RadialPrimitives p = dynamic_primitives(med, t);
  return {p.psi1, p.psi2};
}

Mat2c fundamental_tensor(const ElasticMedium& med, Vec2 x, Vec2 y) {
  const Vec2 r = x - y;
  const double d = norm(r);
  if (!(d > 0.0)) throw std::domain_error("fundamental_tensor: x == y");
  const auto [p1, p2] = phi12(med, d);
  return p1 * identity2() + p2 * jmat(r);
}

Mat2c static_fundamental(const ElasticMedium& med, Vec2 x, Vec2 y) {
  const Vec2 r = x - y;
  const double d = norm(r);
  if (!(d > 0.0)) throw std::domain_error("static_fundamental: x == y");
  const auto [a, b] = kelvin_constants(med);
  return Cx(-a * std::log(d)) * identity2() + Cx(b) * jmat(r);
}

Mat2c double_layer_kernel(const ElasticMedium& med, Vec2 x, Vec2 y, Vec2 ny) {
  const Vec2 s = y - x;
  const double d = norm(s);
  if (!(d > 0.0)) throw std::domain_error("double_layer_kernel: x == y");
  return transpose(
      traction_of_radial(dynamic_primitives(med, d), med.lambda, med.mu, s / d, ny));
}

Mat2c static_double_layer_kernel(const ElasticMedium& med, Vec2 x, Vec2 y, Vec2 ny) {
  const Vec2 s = y - x;
  const double d = norm(s);
  if (!(d > 0.0)) throw std::domain_error("static_double_layer_kernel: x == y");
  return transpose(
      traction_of_radial(static_primitives(med, d), med.lambda, med.mu, s / d, ny));
}

Mat2c single_traction_kernel(const ElasticMedium& med, Vec2 x, Vec2 nx, Vec2 y) {
  const Vec2 r = x - y;
  const double d = norm(r);
  if (!(d > 0.0)) throw std::domain_error("single_traction_kernel: x == y");
  return traction_of_radial(dynamic_primitives(med, d), med.lambda, med.mu, r / d, nx);
}

Mat2c static_single_traction_kernel(const ElasticMedium& med, Vec2 x, Vec2 nx, Vec2 y) {
  const Vec2 r = x - y;
  const double d = norm(r);
  if (!(d > 0.0)) throw std::domain_error("static_single_traction_kernel: x == y");
  return traction_of_radial(static_primitives(med, d), med.lambda, med.mu, r / d, nx);
}

Mat2c hyper_difference_kernel(const ElasticMedium& med, Vec2 x, Vec2 nx, Vec2 y,
                              Vec2 ny) {
  const Vec2 s = y - x;
  const double d = norm(s);
  if (!(d > 0.0)) throw std::domain_error("hyper_difference_kernel: x == y");
  const MediumSeries series = build_medium_series(med);
  const RadialPrimitives diff = diff_primitives(med, series, d);
  return hyper_compose(slots_from_primitives(diff, med.lambda, med.mu), s / d, ny, nx,
                       med.lambda, med.mu);
}

Mat2c combined_hyper_kernel(const ElasticMedium& mi, const ElasticMedium& me, Vec2 x,
                            Vec2 nx, Vec2 y, Vec2 ny) {
  return tau(mi) * hyper_difference_kernel(mi, x, nx, y, ny) -
         tau(me) * hyper_difference_kernel(me, x, nx, y, ny);
}

// ---------------------------------------------------------------------------
// Far-field kernels.

FarFieldCoeffs farfield_coeffs(const ElasticMedium& ext) {
  const double kp = ext.kp(), ks = ext.ks();
  const double lp2m = ext.lambda + 2.0 * ext.mu;
  const Cx eip = std::exp(kImag * (kPi / 4.0));
  const Cx eim = std::exp(-kImag * (kPi / 4.0));
  FarFieldCoeffs c;
  c.beta_p = eip / (lp2m * std::sqrt(8.0 * kPi * kp));
  c.beta_s = eip / (ext.mu * std::sqrt(8.0 * kPi * ks));
  c.gamma_p = eim / lp2m * std::sqrt(kp / (8.0 * kPi));
  c.gamma_s = eim / ext.mu * std::sqrt(ks / (8.0 * kPi));
  return c;
}

Mat2c fmat(const ElasticMedium& ext, Vec2 xhat, Vec2 ny) {
  return Cx(ext.lambda) * outer(xhat, ny) + Cx(ext.mu) * outer(ny, xhat) +
         Cx(ext.mu * dot(ny, xhat)) * identity2();
}

namespace {

Mat2c jalpha(WaveKind alpha, Vec2 xhat) {
  const Mat2c jp = jmat(xhat);
  return alpha == WaveKind::P ? jp : identity2() - jp;
}

double kalpha(const ElasticMedium& ext, WaveKind alpha) {
  return alpha == WaveKind::P ? ext.kp() : ext.ks();
}

}  // namespace

Mat2c farfield_single_kernel(const ElasticMedium& ext, WaveKind alpha, Vec2 xhat,
                             Vec2 y) {
  const FarFieldCoeffs c = farfield_coeffs(ext);
  const Cx beta = alpha == WaveKind::P ? c.beta_p : c.beta_s;
  const Cx phase = std::exp(-kImag * (kalpha(ext, alpha) * dot(xhat, y)));
  return (beta * phase) * jalpha(alpha, xhat);
}

Mat2c farfield_double_kernel(const ElasticMedium& ext, WaveKind alpha, Vec2 xhat,
                             Vec2 y, Vec2 ny) {
  const FarFieldCoeffs c = farfield_coeffs(ext);
  const Cx gamma = alpha == WaveKind::P ? c.gamma_p : c.gamma_s;
  const Cx phase = std::exp(-kImag * (kalpha(ext, alpha) * dot(xhat, y)));
  return (gamma * phase) * (jalpha(alpha, xhat) * fmat(ext, xhat, ny));
}

Mat2c frechet_G(const ElasticMedium& ext, WaveKind alpha, Vec2 xhat,
                [[maybe_unused]] Vec2 z, Vec2 zp, Vec2 qvec, Vec2 qderiv) {
  const double speed = norm(zp);
  if (!(speed > 0.0)) throw NumericalError("frechet_G: degenerate parametrization");
  const Vec2 ny = qrot(zp) / speed;
  const Vec2 v = qrot(qderiv);
  Mat2c g = Cx(ext.lambda) * outer(xhat, v) + Cx(ext.mu) * outer(v, xhat) +
            Cx(ext.mu * dot(v, xhat)) * identity2();
  const Cx factor = -kImag * kalpha(ext, alpha) * dot(xhat, qvec) * speed;
  return g + factor * fmat(ext, xhat, ny);
}

Cx frechet_g(const ElasticMedium& ext, WaveKind alpha, Vec2 xhat, Vec2 zp, Vec2 qvec,
             Vec2 qderiv) {
  const double speed = norm(zp);
  if (!(speed > 0.0)) throw NumericalError("frechet_g: degenerate parametrization");
  return -kImag * kalpha(ext, alpha) * dot(xhat, qvec) * speed +
         dot(zp, qderiv) / speed;
}

// ---------------------------------------------------------------------------
// Split parametrized kernels.

SplitKernel single_layer_split(const ElasticMedium& med, const BoundaryCurve& curve) {
  SplitKernel k;
  k.sing = Singularity::Log;
  k.full = [med, curve](double t, double tau) {
    const PairGeometry g = pair_geometry(curve, t, tau);
    const RadialPrimitives p = dynamic_primitives(med, g.d);
    return g.ftau.speed * (p.psi1 * identity2() + p.psi2 * outer(g.shat, g.shat));
  };
  const auto sc = detail::series_constants(med);
  const MediumSeries series = build_medium_series(med);
  k.k1 = [med, curve, sc, series](double t, double tau) {
    if (near_diagonal(t, tau)) {
      const CurveFrame f = frame(curve, t);
      return (0.5 * f.speed * (2.0 * kImag / kPi) * sc.jphi10) * identity2();
    }
    const PairGeometry g = pair_geometry(curve, t, tau);
    const RadialPrimitives p = logslope_primitives(med, series, g.d);
    return 0.5 * g.ftau.speed * (p.psi1 * identity2() + p.psi2 * outer(g.shat, g.shat));
  };
  k.b_diag = [med, curve, sc](double t) {
    const CurveFrame f = frame(curve, t);
    const Cx c1 = sc.rphi10 + (2.0 * kImag / kPi) * sc.jphi10 * std::log(f.speed);
    return f.speed * (c1 * identity2() + Cx(sc.b) * outer(f.tangent, f.tangent));
  };
  return k;
}

SplitKernel double_layer_split(const ElasticMedium& med, const BoundaryCurve& curve) {
  SplitKernel k;
  k.sing = Singularity::LogCauchy;
  const double lambda = med.lambda, mu = med.mu;
  k.full = [med, curve, lambda, mu](double t, double tau) {
    const PairGeometry g = pair_geometry(curve, t, tau);
    return g.ftau.speed * transpose(traction_of_radial(dynamic_primitives(med, g.d),
                                                       lambda, mu, g.shat, g.ftau.normal));
  };
  const MediumSeries dl_series = build_medium_series(med);
  k.k1 = [med, curve, lambda, mu, dl_series](double t, double tau) {
    if (near_diagonal(t, tau)) return Mat2c{};
    const PairGeometry g = pair_geometry(curve, t, tau);
    return 0.5 * g.ftau.speed *
           transpose(traction_of_radial(logslope_primitives(med, dl_series, g.d), lambda,
                                        mu, g.shat, g.ftau.normal));
  };
  const Mat2c c_mat = (-mu / (4.0 * kPi * (lambda + 2.0 * mu))) * qmat();
  k.cauchy = [c_mat](double, double) { return c_mat; };
  const auto kel = kelvin_constants(med);
  k.b_diag = [curve, lambda, mu, kel](double t) {
    const CurveFrame f = frame(curve, t);
    const Vec2 w = qrot(f.d1);
    const double nu2 = dot(qrot(f.d1), f.d2);
    const Vec2 rem = cauchy_remainder_diag(f);
    const double sp2 = f.speed * f.speed;
    Mat2c b = (lambda * (kel.b - kel.a)) * outer(rem, w);
    b = b + (2.0 * mu * kel.b) * (outer(w, rem) + outer(rem, w));
    b = b + (mu * (kel.a + kel.b)) * outer(qrot(rem), qrot(w));
    b = b + Cx(mu * kel.a * nu2 / sp2) * identity2();
    b = b + (2.0 * mu * kel.b * nu2 / (sp2 * sp2)) * outer(f.d1, f.d1);
    return b;
  };
  return k;
}

SplitKernel traction_split(const ElasticMedium& med, const BoundaryCurve& curve) {
  SplitKernel k;
  k.sing = Singularity::LogCauchy;
  const double lambda = med.lambda, mu = med.mu;
  k.full = [med, curve, lambda, mu](double t, double tau) {
    const PairGeometry g = pair_geometry(curve, t, tau);
    return g.ftau.speed * traction_of_radial(dynamic_primitives(med, g.d), lambda, mu,
                                             -1.0 * g.shat, g.ft.normal);
  };
  const MediumSeries tr_series = build_medium_series(med);
  k.k1 = [med, curve, lambda, mu, tr_series](double t, double tau) {
    if (near_diagonal(t, tau)) return Mat2c{};
    const PairGeometry g = pair_geometry(curve, t, tau);
    return 0.5 * g.ftau.speed *
           traction_of_radial(logslope_primitives(med, tr_series, g.d), lambda, mu,
                              -1.0 * g.shat, g.ft.normal);
  };
  const auto kel = kelvin_constants(med);
  k.cauchy = [curve, lambda, mu, kel](double t, double tau) {
    const CurveFrame ft = frame(curve, t);
    const CurveFrame ftau = frame(curve, tau);
    const Vec2 n = ft.normal;
    Mat2c c = (-lambda * (kel.b - kel.a)) * outer(n, ftau.d1);
    c = c - (2.0 * mu * kel.b) * (outer(ftau.d1, n) + outer(n, ftau.d1));
    c = c - (mu * (kel.a + kel.b)) * outer(qrot(n), qrot(ftau.d1));
    return (1.0 / (2.0 * ftau.speed)) * c;
  };
  k.b_diag = [curve, lambda, mu, kel](double t) {
    const CurveFrame f = frame(curve, t);
    const Vec2 n = f.normal;
    const Vec2 rem = cauchy_remainder_diag(f);
    const double kap = dot(n, f.d2) / (2.0 * f.speed * f.speed);
    Mat2c b = (-lambda * (kel.b - kel.a)) * outer(n, rem);
    b = b - (2.0 * mu * kel.b) * (outer(rem, n) + outer(n, rem));
    b = b - (mu * (kel.a + kel.b)) * outer(qrot(n), qrot(rem));
    b = b + Cx(2.0 * mu * kel.a * kap) * identity2();
    b = b + (4.0 * mu * kel.b * kap / (f.speed * f.speed)) * outer(f.d1, f.d1);
    return f.speed * b;
  };
  return k;
}

SplitKernel hyper_difference_split(const ElasticMedium& med, const BoundaryCurve& curve) {
  SplitKernel k;
  k.sing = Singularity::Log;
  const double lambda = med.lambda, mu = med.mu;
  const auto sc = detail::series_constants(med);
  // Diagonal slot constants: the ln d coefficients (left) and the continuous
  // parts (right) of each derivative combination of psi1/psi2.
  const HyperSlots slotsL = make_slots(lambda, mu, 2.0 * sc.c12L, 2.0 * sc.c12L,
                                       2.0 * sc.c22L, 2.0 * sc.c22L, sc.c22L, sc.c22L);
  const HyperSlots slotsK =
      make_slots(lambda, mu, 3.0 * sc.c12L + 2.0 * sc.c12, sc.c12L + 2.0 * sc.c12,
                 3.0 * sc.c22L + 2.0 * sc.c22, sc.c22L + 2.0 * sc.c22, sc.c22,
                 sc.c22L + sc.c22);
  const MediumSeries series = build_medium_series(med);
  k.full = [med, curve, lambda, mu, series](double t, double tau) {
    const PairGeometry g = pair_geometry(curve, t, tau);
    const RadialPrimitives diff = diff_primitives(med, series, g.d);
    return g.ftau.speed * hyper_compose(slots_from_primitives(diff, lambda, mu), g.shat,
                                        g.ftau.normal, g.ft.normal, lambda, mu);
  };
  k.k1 = [med, curve, lambda, mu, slotsL, series](double t, double tau) {
    if (near_diagonal(t, tau)) {
      const CurveFrame f = frame(curve, t);
      return 0.5 * f.speed *
             hyper_compose(slotsL, f.tangent, f.normal, f.normal, lambda, mu);
    }
    const PairGeometry g = pair_geometry(curve, t, tau);
    return 0.5 * g.ftau.speed *
           hyper_compose(
               slots_from_primitives(logslope_primitives(med, series, g.d), lambda, mu),
               g.shat, g.ftau.normal, g.ft.normal, lambda, mu);
  };
  k.b_diag = [curve, lambda, mu, slotsL, slotsK](double t) {
    const CurveFrame f = frame(curve, t);
    const Mat2c wj = hyper_compose(slotsL, f.tangent, f.normal, f.normal, lambda, mu);
    const Mat2c wp = hyper_compose(slotsK, f.tangent, f.normal, f.normal, lambda, mu);
    return f.speed * (std::log(f.speed) * wj + wp);
  };
  return k;
}

SplitKernel combine_splits(SplitKernel a, SplitKernel b, Cx wa, Cx wb) {
  SplitKernel k;
  k.sing = (a.sing == Singularity::LogCauchy || b.sing == Singularity::LogCauchy)
               ? Singularity::LogCauchy
               : (a.sing == Singularity::Log || b.sing == Singularity::Log)
                     ? Singularity::Log
                     : Singularity::Smooth;
  k.full = [a, b, wa, wb](double t, double tau) {
    return wa * a.full(t, tau) + wb * b.full(t, tau);
  };
  if (a.k1 || b.k1)
    k.k1 = [a, b, wa, wb](double t, double tau) {
      Mat2c m;
      if (a.k1) m = m + wa * a.k1(t, tau);
      if (b.k1) m = m + wb * b.k1(t, tau);
      return m;
    };
  if (a.cauchy || b.cauchy)
    k.cauchy = [a, b, wa, wb](double t, double tau) {
      Mat2c m;
      if (a.cauchy) m = m + wa * a.cauchy(t, tau);
      if (b.cauchy) m = m + wb * b.cauchy(t, tau);
      return m;
    };
  k.b_diag = [a, b, wa, wb](double t) {
    Mat2c m;
    if (a.b_diag) m = m + wa * a.b_diag(t);
    if (b.b_diag) m = m + wb * b.b_diag(t);
    return m;
  };
  return k;
}

Mat2c static_hyper_full(const ElasticMedium& med, const BoundaryCurve& curve, double t,
                        double tau) {
  const PairGeometry g = pair_geometry(curve, t, tau);
  return g.ftau.speed *
         hyper_compose(slots_from_primitives(static_primitives(med, g.d), med.lambda,
                                             med.mu),
                       g.shat, g.ftau.normal, g.ft.normal, med.lambda, med.mu);
}

}  // namespace elascat
