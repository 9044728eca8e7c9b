#include "elascat/media.hpp"

namespace elascat {

ElasticMedium::ElasticMedium(double lambda_, double mu_, double rho_, double omega_)
    : lambda(lambda_), mu(mu_), rho(rho_), omega(omega_) {
  if (!(mu > 0.0) || !(rho > 0.0) || !(omega > 0.0) || !(lambda + mu > 0.0))
    throw ConfigError("ElasticMedium: need mu>0, rho>0, omega>0 and lambda+mu>0");
}

Wavenumbers wavenumbers(const ElasticMedium& m) { return {m.kp(), m.ks()}; }

double tau(const ElasticMedium& m) {
  return (m.lambda + 2.0 * m.mu) / (m.mu * (m.lambda + m.mu));
}

double static_hyper_constant(const ElasticMedium& m) {
  return m.mu * (m.lambda + m.mu) / (m.lambda + 2.0 * m.mu);
}

IncidentWave::IncidentWave(WaveKind kind_, Vec2 direction_)
    : kind(kind_), direction(direction_) {
  const double len = norm(direction);
  if (std::abs(len - 1.0) > 1e-12) {
    if (len == 0.0) throw ConfigError("IncidentWave: zero direction");
    direction = direction / len;
  }
}

Vec2c incident_field(const IncidentWave& w, const ElasticMedium& m, Vec2 x) {
  const Vec2 d = w.direction;
  if (w.kind == WaveKind::P) {
    const Cx phase = std::exp(kImag * (m.kp() * dot(d, x)));
    return phase * d;
  }
  const Cx phase = std::exp(kImag * (m.ks() * dot(d, x)));
  const Vec2 qd = qrot(d);
  return (-phase) * qd;
}

Vec2c incident_traction(const IncidentWave& w, const ElasticMedium& m, Vec2 x,
                        Vec2 n) {
  // For u = a exp(i k d.x):  div u = ik (d.a),  (n.grad)u = ik (n.d) a,
  // rot u = ik cross(d, a);  T u = lambda n div u + 2 mu (n.grad)u
  //                               + mu (Q n) rot u.
  const Vec2 d = w.direction;
  if (w.kind == WaveKind::P) {
    const double k = m.kp();
    const Cx f = kImag * k * std::exp(kImag * (k * dot(d, x)));
    // a = d: rot term vanishes (cross(d,d) = 0)
    const Vec2 vec = m.lambda * Vec2{n.x, n.y} + (2.0 * m.mu * dot(n, d)) * d;
    return f * vec;
  }
  const double k = m.ks();
  const Cx f = kImag * k * std::exp(kImag * (k * dot(d, x)));
  // a = -Q d: div u = -ik (d . Q d) = 0, rot u = -ik cross(d, Qd) = ik |d|^2
  const Vec2 qd = qrot(d);
  const Vec2 qn = qrot(n);
  const Vec2 vec = (-2.0 * m.mu * dot(n, d)) * qd + m.mu * qn;
  return f * vec;
}

}  // namespace elascat
