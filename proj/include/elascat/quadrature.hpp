#ifndef ELASCAT_QUADRATURE_HPP
#define ELASCAT_QUADRATURE_HPP

#include <string>
#include <vector>

#include "elascat/kernels.hpp"
#include "elascat/linalg.hpp"

namespace elascat {

// Quadrature weights R_j(t_k) for kernels of the form
// f(tau) ln(4 sin^2((t-tau)/2)), exact for trigonometric polynomials of
// degree < n.
struct LogWeights {
  int n;
  std::vector<double> r;  // (2n)^2 row-major
  double operator()(int k, int j) const { return r[k * 2 * n + j]; }
};

LogWeights log_weights(int n);

// Weights for the principal-value Hilbert kernel cot((tau-t)/2), exact for
// trigonometric polynomials of degree < n; the diagonal weight vanishes.
struct HilbertWeights {
  int n;
  std::vector<double> h;
  double operator()(int k, int j) const { return h[k * 2 * n + j]; }
};

HilbertWeights hilbert_weights(int n);

// Spectral differentiation matrix on the 2n-point grid.
std::vector<double> trig_diff_matrix(int n);

// Discretized boundary operator: complex (4n)x(4n) matrix acting on
// interleaved 2-vector densities at the 2n collocation nodes.
struct DiscreteOperator {
  int n = 0;
  CMatrix mat;
  std::string label;
};

// Nystrom assembly of a split kernel on the grid.  The declared singularity
// class is sanity-checked against a near-diagonal scan of the kernel.
DiscreteOperator split_and_assemble(const SplitKernel& kernel,
                                    const CollocationGrid& grid,
                                    std::string label, int threads = 0);

// Plain trapezoidal assembly for a smooth kernel given directly.
DiscreteOperator assemble_smooth(const std::function<Mat2c(double, double)>& kernel,
                                 const CollocationGrid& grid, std::string label,
                                 int threads = 0);

// The static hypersingular operator N0 in its Hilbert-transform form:
// cot-kernel on the density derivative plus a smooth remainder.
DiscreteOperator assemble_static_hyper(const ElasticMedium& medium,
                                       const BoundaryCurve& curve,
                                       const CollocationGrid& grid,
                                       std::string label, int threads = 0);

std::vector<Cx> apply(const DiscreteOperator& op, const std::vector<Cx>& density);

// Block helpers for composing systems.
void insert_block(CMatrix& dst, const CMatrix& src, std::size_t row0, std::size_t col0);
void add_scaled_identity(CMatrix& dst, Cx scale, std::size_t row0, std::size_t col0,
                         std::size_t size);

// Row-parallel loop used by the assemblers; threads <= 0 picks hardware
// parallelism.
void parallel_rows(int rows, int threads, const std::function<void(int)>& body);

// Global worker cap for assemblies that do not pass an explicit count
// (set from the CLI --threads flag).
void set_default_threads(int threads);
int default_threads();

}  // namespace elascat

#endif
