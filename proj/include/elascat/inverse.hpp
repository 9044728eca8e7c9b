#ifndef ELASCAT_INVERSE_HPP
#define ELASCAT_INVERSE_HPP

#include <cstdint>

#include "elascat/forward.hpp"

namespace elascat {

struct ReconstructionConfig {
  int m = 3;                // trig degree of the radial update
  int n = 32;               // collocation half-count for the inversion
  double lambda0 = 0.8;     // initial regularization parameter
  double decay = 2.0 / 3.0; // per-step factor
  int p = 1;                // Sobolev penalty order
  int max_iter = 40;
  double r0 = 0.5;          // initial circle radius
  std::vector<IncidentWave> illuminations;
  double noise_delta = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct ReconstructionState {
  RadialTrigCurve r;
  double lambda = 0.0;
  int iter = 0;
  double residual = 0.0;   // stacked far-field residual before the step
  double step_norm = 0.0;  // H1 norm of the accepted update
};

struct ReconstructionResult {
  std::vector<ReconstructionState> trajectory;
  RadialTrigCurve final_r;
  std::vector<double> residual_history;
  int iterations = 0;
  bool early_stop = false;
};

// Measured far-field data for one illumination, stacked as
// [u_p components at the 2n angles (interleaved), u_s components].
using FarFieldStack = std::vector<Cx>;

FarFieldStack stack_farfield(const FarFieldPattern& f);

// Direction set d_l = (cos 2 pi l / L, sin 2 pi l / L), longitudinal waves.
std::vector<IncidentWave> pwave_ring(int count);

// Synthetic data: single-layer forward solve at doubled resolution,
// evaluated at the 2n inversion angles.
std::vector<FarFieldStack> synthesize_data(const ElasticMedium& interior,
                                           const ElasticMedium& exterior,
                                           const BoundaryCurve& truth, int n_inverse,
                                           const std::vector<IncidentWave>& illuminations);

// L2-calibrated Gaussian noise: U + delta (||U||/||V||) V with V seeded
// component-wise standard normal.
FarFieldStack add_noise(const FarFieldStack& data, double delta, std::uint64_t seed);

double update_lambda(double lambda0, double decay, int k);

// diag(2 pi, pi (1+k^2)^p, ...) so x^T I_p x is the squared H^p norm.
std::vector<double> sobolev_penalty(int m, int p);

// Solves (Re(G)^T Re(G) + Im(G)^T Im(G) + lambda I_p) x =
//        Re(G)^T Re(b) + Im(G)^T Im(b) by conjugate gradients.
std::vector<double> tikhonov_step(const CMatrix& g, const std::vector<Cx>& b,
                                  const std::vector<double>& penalty_diag,
                                  double lambda);

// The well-posed boundary subsystem on a fixed curve, factored once per
// iteration and solved per illumination.
class DensitySubsystem {
 public:
  DensitySubsystem(const ElasticMedium& interior, const ElasticMedium& exterior,
                   const BoundaryCurve& curve, int n);

  // Returns (xi, zeta) ~ (u_total, T^e u_total) traces on the curve.
  DensitySolution solve(const IncidentWave& wave) const;

 private:
  ElasticMedium interior_;
  ElasticMedium exterior_;
  BoundaryCurve curve_;
  CollocationGrid grid_;
  LuFactors lu_;
};

struct LinearizedRows {
  CMatrix a;          // 8n x 4n acting on stacked (q(t_j), q'(t_j)) samples
  std::vector<Cx> b;  // 8n far-field residual
};

LinearizedRows assemble_farfield_rows(const ElasticMedium& exterior,
                                      const BoundaryCurve& curve,
                                      const CollocationGrid& grid,
                                      const DensitySolution& densities,
                                      const FarFieldStack& measured);

// 4n x (2m+1) map from trig coefficients to stacked (values, derivatives).
std::vector<double> trig_basis_matrix(const CollocationGrid& grid, int m);

ReconstructionResult reconstruct(const ElasticMedium& interior,
                                 const ElasticMedium& exterior,
                                 const ReconstructionConfig& config,
                                 const std::vector<FarFieldStack>& data);

}  // namespace elascat

#endif
