#include "elascat/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace elascat {

CurveFrame frame(const BoundaryCurve& curve, double t) {
  CurveFrame f;
  f.z = curve.eval(t);
  f.d1 = curve.deriv1(t);
  f.d2 = curve.deriv2(t);
  f.speed = norm(f.d1);
  if (!(f.speed > 1e-14))
    throw NumericalError("frame: degenerate curve, |z'| vanishes");
  f.tangent = f.d1 / f.speed;
  f.normal = qrot(f.tangent);
  return f;
}

namespace {

// Assemble z, z', z'' for z(t) = r(t)(cos t, sin t).
BoundaryCurve from_radial(std::function<double(double)> r,
                          std::function<double(double)> r1,
                          std::function<double(double)> r2) {
  BoundaryCurve c;
  c.eval = [r](double t) -> Vec2 {
    const double rv = r(t);
    return {rv * std::cos(t), rv * std::sin(t)};
  };
  c.deriv1 = [r, r1](double t) -> Vec2 {
    const double rv = r(t), r1v = r1(t);
    const double ct = std::cos(t), st = std::sin(t);
    return {r1v * ct - rv * st, r1v * st + rv * ct};
  };
  c.deriv2 = [r, r1, r2](double t) -> Vec2 {
    const double rv = r(t), r1v = r1(t), r2v = r2(t);
    const double ct = std::cos(t), st = std::sin(t);
    return {(r2v - rv) * ct - 2.0 * r1v * st, (r2v - rv) * st + 2.0 * r1v * ct};
  };
  return c;
}

}  // namespace

BoundaryCurve peanut() {
  // r(t) = sqrt(0.5 cos^2 t + 0.15 sin^2 t)
  auto r = [](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return std::sqrt(0.5 * c * c + 0.15 * s * s);
  };
  auto r1 = [r](double t) { return -0.175 * std::sin(2.0 * t) / r(t); };
  auto r2 = [r, r1](double t) {
    const double rv = r(t), r1v = r1(t);
    return -(0.35 * std::cos(2.0 * t) + r1v * r1v) / rv;
  };
  return from_radial(r, r1, r2);
}

BoundaryCurve apple() {
  // r(t) = (0.45 + 0.3 cos t - 0.1 sin 2t) / (1 + 0.7 cos t)
  auto N = [](double t) { return 0.45 + 0.3 * std::cos(t) - 0.1 * std::sin(2.0 * t); };
  auto N1 = [](double t) { return -0.3 * std::sin(t) - 0.2 * std::cos(2.0 * t); };
  auto N2 = [](double t) { return -0.3 * std::cos(t) + 0.4 * std::sin(2.0 * t); };
  auto D = [](double t) { return 1.0 + 0.7 * std::cos(t); };
  auto D1 = [](double t) { return -0.7 * std::sin(t); };
  auto D2 = [](double t) { return -0.7 * std::cos(t); };
  auto r = [N, D](double t) { return N(t) / D(t); };
  auto r1 = [N, N1, D, D1](double t) {
    const double d = D(t);
    return (N1(t) * d - N(t) * D1(t)) / (d * d);
  };
  auto r2 = [r, r1, N2, D, D1, D2](double t) {
    // N = r D  =>  N'' = r'' D + 2 r' D' + r D''
    return (N2(t) - 2.0 * r1(t) * D1(t) - r(t) * D2(t)) / D(t);
  };
  return from_radial(r, r1, r2);
}

BoundaryCurve kite() {
  BoundaryCurve c;
  c.eval = [](double t) -> Vec2 {
    return {std::cos(t) + 0.7 * std::cos(2.0 * t), 1.2 * std::sin(t)};
  };
  c.deriv1 = [](double t) -> Vec2 {
    return {-std::sin(t) - 1.4 * std::sin(2.0 * t), 1.2 * std::cos(t)};
  };
  c.deriv2 = [](double t) -> Vec2 {
    return {-std::cos(t) - 2.8 * std::cos(2.0 * t), -1.2 * std::sin(t)};
  };
  return c;
}

BoundaryCurve circle(double radius) {
  if (!(radius > 0.0)) throw ConfigError("circle: radius must be positive");
  BoundaryCurve c;
  c.eval = [radius](double t) -> Vec2 { return {radius * std::cos(t), radius * std::sin(t)}; };
  c.deriv1 = [radius](double t) -> Vec2 { return {-radius * std::sin(t), radius * std::cos(t)}; };
  c.deriv2 = [radius](double t) -> Vec2 { return {-radius * std::cos(t), -radius * std::sin(t)}; };
  return c;
}

RadialTrigCurve::RadialTrigCurve(std::vector<double> a_, std::vector<double> b_)
    : a(std::move(a_)), b(std::move(b_)) {
  if (a.size() != b.size() + 1)
    throw ConfigError("RadialTrigCurve: need m+1 cosine and m sine coefficients");
}

double RadialTrigCurve::radius(double t) const {
  double r = a[0];
  for (std::size_t k = 1; k < a.size(); ++k) r += a[k] * std::cos(k * t);
  for (std::size_t k = 1; k <= b.size(); ++k) r += b[k - 1] * std::sin(k * t);
  return r;
}

double RadialTrigCurve::radius_d1(double t) const {
  double r = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) r -= a[k] * k * std::sin(k * t);
  for (std::size_t k = 1; k <= b.size(); ++k) r += b[k - 1] * k * std::cos(k * t);
  return r;
}

double RadialTrigCurve::radius_d2(double t) const {
  double r = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) r -= a[k] * k * k * std::cos(k * t);
  for (std::size_t k = 1; k <= b.size(); ++k) r -= b[k - 1] * k * k * std::sin(k * t);
  return r;
}

BoundaryCurve RadialTrigCurve::as_curve() const {
  const RadialTrigCurve self = *this;
  BoundaryCurve c;
  c.eval = [self](double t) -> Vec2 {
    const double r = self.radius(t);
    return {r * std::cos(t), r * std::sin(t)};
  };
  c.deriv1 = [self](double t) -> Vec2 {
    const double r = self.radius(t), r1 = self.radius_d1(t);
    const double ct = std::cos(t), st = std::sin(t);
    return {r1 * ct - r * st, r1 * st + r * ct};
  };
  c.deriv2 = [self](double t) -> Vec2 {
    const double r = self.radius(t), r1 = self.radius_d1(t), r2 = self.radius_d2(t);
    const double ct = std::cos(t), st = std::sin(t);
    return {(r2 - r) * ct - 2.0 * r1 * st, (r2 - r) * st + 2.0 * r1 * ct};
  };
  return c;
}

bool radial_positive(const RadialTrigCurve& r, int grid_half_count) {
  const CollocationGrid grid(grid_half_count);
  for (double t : grid.nodes)
    if (!(r.radius(t) > 0.0)) return false;
  return true;
}

RadialTrigCurve radial_update(const RadialTrigCurve& r, const RadialTrigCurve& q,
                              int grid_half_count) {
  if (q.degree() > r.degree())
    throw ConfigError("radial_update: update degree exceeds curve degree");
  RadialTrigCurve out = r;
  for (std::size_t k = 0; k < q.a.size(); ++k) out.a[k] += q.a[k];
  for (std::size_t k = 0; k < q.b.size(); ++k) out.b[k] += q.b[k];
  if (!radial_positive(out, grid_half_count))
    throw NumericalError("radial_update: radius non-positive on the grid");
  return out;
}

PerturbationField perturbation_field(const RadialTrigCurve& q, double t) {
  const double qv = q.radius(t), q1 = q.radius_d1(t);
  const double ct = std::cos(t), st = std::sin(t);
  PerturbationField f;
  f.q = {qv * ct, qv * st};
  f.dq = {q1 * ct - qv * st, q1 * st + qv * ct};
  f.v = qrot(f.dq);
  return f;
}

CollocationGrid::CollocationGrid(int n_) : n(n_) {
  if (n < 2) throw ConfigError("CollocationGrid: need n >= 2");
  nodes.resize(2 * n);
  for (int j = 0; j < 2 * n; ++j) nodes[j] = j * kPi / n;
}

RadialTrigCurve trig_fit(const std::vector<double>& samples, int m) {
  const int N = static_cast<int>(samples.size());
  if (N < 2 * m + 1 || N % 2 != 0)
    throw ConfigError("trig_fit: need an even sample count exceeding 2m");
  RadialTrigCurve out(m);
  const double h = 2.0 * kPi / N;
  for (int j = 0; j < N; ++j) out.a[0] += samples[j];
  out.a[0] /= N;
  for (int k = 1; k <= m; ++k) {
    double ca = 0.0, cb = 0.0;
    for (int j = 0; j < N; ++j) {
      ca += samples[j] * std::cos(k * j * h);
      cb += samples[j] * std::sin(k * j * h);
    }
    out.a[k] = 2.0 * ca / N;
    out.b[k - 1] = 2.0 * cb / N;
  }
  return out;
}

namespace {

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

double polar_radius(const BoundaryCurve& curve, double theta) {
  // Bisection on g(t) = angle(z(t)) - theta over a bracketing interval found
  // by scanning; assumes the curve is starlike about the origin.
  const int scan = 720;
  double t_lo = 0.0, t_hi = 0.0;
  double g_lo = 0.0;
  bool found = false;
  double prev_t = 0.0;
  double prev_g = wrap_angle(std::atan2(curve.eval(0.0).y, curve.eval(0.0).x) - theta);
  for (int i = 1; i <= scan && !found; ++i) {
    const double t = 2.0 * kPi * i / scan;
    const Vec2 z = curve.eval(t);
    const double g = wrap_angle(std::atan2(z.y, z.x) - theta);
    if (std::abs(g) < 1e-14) return norm(z);
    if (prev_g * g < 0.0 && std::abs(g - prev_g) < kPi) {
      t_lo = prev_t;
      t_hi = t;
      g_lo = prev_g;
      found = true;
    }
    prev_t = t;
    prev_g = g;
  }
  if (!found) throw NumericalError("polar_radius: no bracketing interval (curve not starlike?)");
  for (int it = 0; it < 80; ++it) {
    const double tm = 0.5 * (t_lo + t_hi);
    const Vec2 z = curve.eval(tm);
    const double gm = wrap_angle(std::atan2(z.y, z.x) - theta);
    if (g_lo * gm <= 0.0)
      t_hi = tm;
    else {
      t_lo = tm;
      g_lo = gm;
    }
  }
  return norm(curve.eval(0.5 * (t_lo + t_hi)));
}

double radial_l2_distance(const BoundaryCurve& a, const BoundaryCurve& b, int samples) {
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * kPi * i / samples;
    const double d = polar_radius(a, theta) - polar_radius(b, theta);
    acc += d * d;
  }
  return std::sqrt(acc * 2.0 * kPi / samples);
}

int winding_number(const BoundaryCurve& curve, Vec2 p, int samples) {
  double total = 0.0;
  Vec2 prev = curve.eval(0.0) - p;
  for (int i = 1; i <= samples; ++i) {
    const Vec2 cur = curve.eval(2.0 * kPi * i / samples) - p;
    total += std::atan2(cross(prev, cur), dot(prev, cur));
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace elascat
