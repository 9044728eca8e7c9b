#ifndef ELASCAT_KERNELS_HPP
#define ELASCAT_KERNELS_HPP

#include <functional>
#include <utility>

#include "elascat/core.hpp"
#include "elascat/geometry.hpp"
#include "elascat/media.hpp"

namespace elascat {

// J(x) = x x^T / |x|^2
Mat2c jmat(Vec2 x);

// Radial parts of the fundamental tensor: Phi(x,y) = phi1 I + phi2 J(x-y).
std::pair<Cx, Cx> phi12(const ElasticMedium& medium, double t);

Mat2c fundamental_tensor(const ElasticMedium& medium, Vec2 x, Vec2 y);

// Kelvin tensor, normalized so Phi - Phi0 stays bounded at x = y.
Mat2c static_fundamental(const ElasticMedium& medium, Vec2 x, Vec2 y);

// Kernel [T_y Phi(x,y)]^T of the double-layer / K operators.
Mat2c double_layer_kernel(const ElasticMedium& medium, Vec2 x, Vec2 y, Vec2 ny);
Mat2c static_double_layer_kernel(const ElasticMedium& medium, Vec2 x, Vec2 y, Vec2 ny);

// Kernel T_x Phi(x,y) of the L operator.
Mat2c single_traction_kernel(const ElasticMedium& medium, Vec2 x, Vec2 nx, Vec2 y);
Mat2c static_single_traction_kernel(const ElasticMedium& medium, Vec2 x, Vec2 nx, Vec2 y);

// Kernel of tau_i N_i - tau_e N_e: the dynamic-minus-static traction-traction
// difference; the static hypersingular parts cancel exactly.
Mat2c combined_hyper_kernel(const ElasticMedium& interior, const ElasticMedium& exterior,
                            Vec2 x, Vec2 nx, Vec2 y, Vec2 ny);

// Per-medium dynamic-minus-static traction-traction kernel T_x [T_y (Phi - Phi0)]^T.
Mat2c hyper_difference_kernel(const ElasticMedium& medium, Vec2 x, Vec2 nx, Vec2 y, Vec2 ny);

// Far-field machinery.
struct FarFieldCoeffs {
  Cx beta_p, beta_s, gamma_p, gamma_s;
};

FarFieldCoeffs farfield_coeffs(const ElasticMedium& exterior);

// F(xhat, y) = lambda_e xhat n^T + mu_e n xhat^T + mu_e (n . xhat) I
Mat2c fmat(const ElasticMedium& exterior, Vec2 xhat, Vec2 ny);

Mat2c farfield_single_kernel(const ElasticMedium& exterior, WaveKind alpha,
                             Vec2 xhat, Vec2 y);
Mat2c farfield_double_kernel(const ElasticMedium& exterior, WaveKind alpha,
                             Vec2 xhat, Vec2 y, Vec2 ny);

// Frechet-derivative kernels of the far-field operators under a radial
// perturbation q: G acts in the double-layer rows, g in the single-layer rows.
Mat2c frechet_G(const ElasticMedium& exterior, WaveKind alpha, Vec2 xhat,
                Vec2 z, Vec2 zp, Vec2 qvec, Vec2 qderiv);
Cx frechet_g(const ElasticMedium& exterior, WaveKind alpha, Vec2 xhat,
             Vec2 zp, Vec2 qvec, Vec2 qderiv);

// ---------------------------------------------------------------------------
// Parametrized kernels split for the Nystrom quadrature.  With
// d(t,tau) = |z(t) - z(tau)| the weighted kernel M(t,tau) |z'(tau)| is
// decomposed as
//   K1(t,tau) ln(4 sin^2((t-tau)/2)) + C(t,tau) cot((tau-t)/2) + B(t,tau)
// where K1, C, B are smooth and B carries a closed-form diagonal limit.

enum class Singularity { Smooth, Log, LogCauchy };

struct SplitKernel {
  Singularity sing = Singularity::Smooth;
  std::function<Mat2c(double, double)> full;    // M |z'(tau)|, off-diagonal
  std::function<Mat2c(double, double)> k1;      // log coefficient
  std::function<Mat2c(double, double)> cauchy;  // cot coefficient (LogCauchy only)
  std::function<Mat2c(double)> b_diag;          // diagonal limit of the remainder
};

SplitKernel single_layer_split(const ElasticMedium& medium, const BoundaryCurve& curve);
SplitKernel double_layer_split(const ElasticMedium& medium, const BoundaryCurve& curve);
SplitKernel traction_split(const ElasticMedium& medium, const BoundaryCurve& curve);
SplitKernel hyper_difference_split(const ElasticMedium& medium, const BoundaryCurve& curve);

// w_a * a + w_b * b, combined piecewise; the result's class is the wider of
// the two operands'.
SplitKernel combine_splits(SplitKernel a, SplitKernel b, Cx wa, Cx wb);

// Static (Kelvin) hypersingular kernel T_x [T_y Phi0]^T |z'(tau)|, used by the
// bare-N assembly through its Maue form.
Mat2c static_hyper_full(const ElasticMedium& medium, const BoundaryCurve& curve,
                        double t, double tau);

namespace detail {

// Small-distance expansion coefficients of the radial parts, per medium:
//   psi1 = Phi1 + a ln d = rphi10 + (c12L ln d + c12) d^2 + O(d^4 ln d)
//   psi2 = Phi2 - b      = (c22L ln d + c22) d^2 + O(d^4 ln d)
struct SeriesConstants {
  double a, b;
  double c12L, c22L;
  Cx c12, c22;
  Cx rphi10;   // continuous part of Phi1 at d = 0
  Cx jphi10;   // J-analog of Phi1 at d = 0 (log slope is (2i/pi) jphi10)
};

SeriesConstants series_constants(const ElasticMedium& medium);

}  // namespace detail

}  // namespace elascat

#endif
