#ifndef ELASCAT_MEDIA_HPP
#define ELASCAT_MEDIA_HPP

#include "elascat/core.hpp"

namespace elascat {

// Isotropic homogeneous elastic material under time-harmonic excitation.
// Requires mu > 0, rho > 0, omega > 0 and lambda + mu > 0.
struct ElasticMedium {
  double lambda;
  double mu;
  double rho;
  double omega;

  ElasticMedium(double lambda_, double mu_, double rho_, double omega_);

  double kp() const { return std::sqrt(rho * omega * omega / (lambda + 2.0 * mu)); }
  double ks() const { return std::sqrt(rho * omega * omega / mu); }
};

struct Wavenumbers {
  double kp;
  double ks;
};

Wavenumbers wavenumbers(const ElasticMedium& medium);

// tau = (lambda + 2 mu) / (mu (lambda + mu)); its reciprocal is the constant
// c = mu (lambda + mu) / (lambda + 2 mu) of the static hypersingular split.
double tau(const ElasticMedium& medium);
double static_hyper_constant(const ElasticMedium& medium);  // 1 / tau

enum class WaveKind { P, S };

// Plane incident wave: P gives d * exp(i kp d.x), S gives -Q d * exp(i ks d.x).
struct IncidentWave {
  WaveKind kind;
  Vec2 direction;  // unit propagation vector

  IncidentWave(WaveKind kind_, Vec2 direction_);
};

Vec2c incident_field(const IncidentWave& wave, const ElasticMedium& medium, Vec2 x);

// Closed-form boundary traction T u_inc at x with unit normal n.
Vec2c incident_traction(const IncidentWave& wave, const ElasticMedium& medium,
                        Vec2 x, Vec2 normal);

}  // namespace elascat

#endif
