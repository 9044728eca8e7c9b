#include "elascat/inverse.hpp"

#include <cmath>
#include <random>

namespace elascat {

void ReconstructionConfig::validate() const {
  if (!(lambda0 > 0.0)) throw ConfigError("ReconstructionConfig: lambda0 must be positive");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("ReconstructionConfig: decay in (0,1)");
  if (!(m >= 0 && m < n)) throw ConfigError("ReconstructionConfig: need 0 <= m < n");
  if (!(r0 > 0.0)) throw ConfigError("ReconstructionConfig: r0 must be positive");
  if (p < 0) throw ConfigError("ReconstructionConfig: p must be non-negative");
  if (max_iter < 1) throw ConfigError("ReconstructionConfig: max_iter must be positive");
  if (illuminations.empty()) throw ConfigError("ReconstructionConfig: no illuminations");
  if (noise_delta < 0.0) throw ConfigError("ReconstructionConfig: negative noise level");
}

FarFieldStack stack_farfield(const FarFieldPattern& f) {
  const std::size_t na = f.angles.size();
  FarFieldStack s(4 * na);
  for (std::size_t k = 0; k < na; ++k) {
    s[2 * k] = f.up[k].x;
    s[2 * k + 1] = f.up[k].y;
    s[2 * na + 2 * k] = f.us[k].x;
    s[2 * na + 2 * k + 1] = f.us[k].y;
  }
  return s;
}

std::vector<IncidentWave> pwave_ring(int count) {
  if (count < 1) throw ConfigError("pwave_ring: need at least one direction");
  std::vector<IncidentWave> w;
  w.reserve(count);
  for (int l = 1; l <= count; ++l) {
    const double ang = 2.0 * kPi * l / count;
    w.emplace_back(WaveKind::P, Vec2{std::cos(ang), std::sin(ang)});
  }
  return w;
}

std::vector<FarFieldStack> synthesize_data(const ElasticMedium& interior,
                                           const ElasticMedium& exterior,
                                           const BoundaryCurve& truth, int n_inverse,
                                           const std::vector<IncidentWave>& ills) {
  ScatteringProblem problem(interior, exterior, truth, 2 * n_inverse);
  const std::vector<double> angles = farfield_angles(n_inverse);
  std::vector<FarFieldStack> data;
  data.reserve(ills.size());
  for (const IncidentWave& wave : ills) {
    const BoundaryData bd = incident_boundary_data(problem, wave);
    const DensitySolution sol = solve_direct_single(problem, bd);
    data.push_back(stack_farfield(far_field(problem, sol, angles)));
  }
  return data;
}

namespace {

// Deterministic standard normals: explicit Box-Muller over mt19937_64 words,
// independent of any library distribution implementation.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  double uniform_open() {
    // in (0, 1]: guard the log
    const std::uint64_t w = rng_();
    return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

FarFieldStack add_noise(const FarFieldStack& data, double delta, std::uint64_t seed) {
  if (delta < 0.0) throw ConfigError("add_noise: negative noise level");
  if (delta == 0.0) return data;
  GaussianStream g(seed);
  FarFieldStack noise(data.size());
  for (Cx& v : noise) {
    const double re = g.next();
    const double im = g.next();
    v = Cx(re, im);
  }
  const double data_norm = norm2(data);
  const double noise_norm = norm2(noise);
  if (noise_norm == 0.0) return data;
  FarFieldStack out = data;
  const double scale = delta * data_norm / noise_norm;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * noise[i];
  return out;
}

double update_lambda(double lambda0, double decay, int k) {
  if (k < 1) throw ConfigError("update_lambda: iteration index starts at 1");
  return lambda0 * std::pow(decay, k - 1);
}

std::vector<double> sobolev_penalty(int m, int p) {
  if (p < 0) throw ConfigError("sobolev_penalty: p must be non-negative");
  std::vector<double> d(2 * m + 1);
  d[0] = 2.0 * kPi;
  for (int k = 1; k <= m; ++k) {
    const double w = kPi * std::pow(1.0 + static_cast<double>(k) * k, p);
    d[k] = w;
    d[m + k] = w;
  }
  return d;
}

std::vector<double> tikhonov_step(const CMatrix& g, const std::vector<Cx>& b,
                                  const std::vector<double>& penalty_diag,
                                  double lambda) {
  if (!(lambda > 0.0)) throw ConfigError("tikhonov_step: lambda must be positive");
  const std::size_t rows = g.rows(), cols = g.cols();
  if (b.size() != rows || penalty_diag.size() != cols)
    throw NumericalError("tikhonov_step: size mismatch");
  std::vector<double> normal(cols * cols, 0.0), rhs(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const Cx* row = g.data() + r * cols;
    for (std::size_t i = 0; i < cols; ++i) {
      const double re_i = row[i].real(), im_i = row[i].imag();
      rhs[i] += re_i * b[r].real() + im_i * b[r].imag();
      for (std::size_t j = i; j < cols; ++j)
        normal[i * cols + j] += re_i * row[j].real() + im_i * row[j].imag();
    }
  }
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < i; ++j) normal[i * cols + j] = normal[j * cols + i];
    normal[i * cols + i] += lambda * penalty_diag[i];
  }
  const CgResult cg = cg_solve(normal, rhs, 1e-10, 10 * static_cast<int>(cols));
  return cg.x;
}

DensitySubsystem::DensitySubsystem(const ElasticMedium& interior,
                                   const ElasticMedium& exterior,
                                   const BoundaryCurve& curve, int n)
    : interior_(interior), exterior_(exterior), curve_(curve), grid_(n) {
  const std::size_t m = 2 * static_cast<std::size_t>(grid_.size());
  const double ti = tau(interior_), te = tau(exterior_);

  const DiscreteOperator a1 = split_and_assemble(
      combine_splits(double_layer_split(interior_, curve_),
                     double_layer_split(exterior_, curve_), Cx(1.0), Cx(-1.0)),
      grid_, "K_i - K_e");
  const DiscreteOperator b1 = split_and_assemble(
      combine_splits(single_layer_split(exterior_, curve_),
                     single_layer_split(interior_, curve_), Cx(1.0), Cx(-1.0)),
      grid_, "S_e - S_i");
  const DiscreteOperator a2 = split_and_assemble(
      combine_splits(hyper_difference_split(interior_, curve_),
                     hyper_difference_split(exterior_, curve_), Cx(ti), Cx(-te)),
      grid_, "tau_i N_i - tau_e N_e");
  const DiscreteOperator b2 = split_and_assemble(
      combine_splits(traction_split(exterior_, curve_), traction_split(interior_, curve_),
                     Cx(te), Cx(-ti)),
      grid_, "tau_e L_e - tau_i L_i");

  CMatrix sys(2 * m, 2 * m);
  insert_block(sys, a1.mat, 0, 0);
  insert_block(sys, b1.mat, 0, m);
  insert_block(sys, a2.mat, m, 0);
  insert_block(sys, b2.mat, m, m);
  add_scaled_identity(sys, Cx(1.0), 0, 0, m);
  add_scaled_identity(sys, Cx(0.5 * (ti + te)), m, m, m);
  lu_ = lu_factor(std::move(sys));
}

DensitySolution DensitySubsystem::solve(const IncidentWave& wave) const {
  const int N = grid_.size();
  const std::size_t m = 2 * static_cast<std::size_t>(N);
  const double te = tau(exterior_);
  std::vector<Cx> rhs(2 * m);
  for (int j = 0; j < N; ++j) {
    const CurveFrame f = frame(curve_, grid_.nodes[j]);
    const Vec2c u = incident_field(wave, exterior_, f.z);
    const Vec2c t = incident_traction(wave, exterior_, f.z, f.normal);
    rhs[2 * j] = u.x;
    rhs[2 * j + 1] = u.y;
    rhs[m + 2 * j] = te * t.x;
    rhs[m + 2 * j + 1] = te * t.y;
  }
  const std::vector<Cx> x = lu_solve(lu_, rhs);
  DensitySolution sol;
  sol.representation = Representation::DirectMethod;
  sol.phi.resize(N);
  sol.psi.resize(N);
  for (int j = 0; j < N; ++j) {
    sol.phi[j] = {x[2 * j], x[2 * j + 1]};
    sol.psi[j] = {x[m + 2 * j], x[m + 2 * j + 1]};
  }
  return sol;
}

LinearizedRows assemble_farfield_rows(const ElasticMedium& exterior,
                                      const BoundaryCurve& curve,
                                      const CollocationGrid& grid,
                                      const DensitySolution& densities,
                                      const FarFieldStack& measured) {
  const int N = grid.size();
  const std::size_t rows = 4 * static_cast<std::size_t>(N);
  if (measured.size() != rows)
    throw NumericalError("assemble_farfield_rows: data length must be 8n");
  LinearizedRows out;
  out.a = CMatrix(rows, 2 * static_cast<std::size_t>(N));
  out.b.assign(rows, Cx(0.0));

  std::vector<CurveFrame> frames(N);
  for (int j = 0; j < N; ++j) frames[j] = frame(curve, grid.nodes[j]);
  const double w = kPi / grid.n;

  for (int k = 0; k < N; ++k) {
    const double ang = grid.nodes[k];
    const Vec2 xhat{std::cos(ang), std::sin(ang)};
    for (const WaveKind alpha : {WaveKind::P, WaveKind::S}) {
      const std::size_t row0 =
          (alpha == WaveKind::P ? 0 : 2 * static_cast<std::size_t>(N)) + 2 * k;
      Vec2c ff{};
      for (int j = 0; j < N; ++j) {
        const CurveFrame& f = frames[j];
        const double tj = grid.nodes[j];
        const Vec2 radial{std::cos(tj), std::sin(tj)};
        const Vec2 radial_perp{-std::sin(tj), std::cos(tj)};

        // current far field D_inf xi - S_inf zeta (trapezoidal, weight |z'|)
        ff = ff + (w * f.speed) *
                      (farfield_double_kernel(exterior, alpha, xhat, f.z, f.normal) *
                           densities.phi[j] -
                       farfield_single_kernel(exterior, alpha, xhat, f.z) *
                           densities.psi[j]);

        // derivative rows: columns for q(t_j) and q'(t_j); no |z'| weight,
        // the kernels carry it where it belongs
        const double kal = alpha == WaveKind::P ? exterior.kp() : exterior.ks();
        const Cx phase = std::exp(-kImag * (kal * dot(xhat, f.z)));
        const FarFieldCoeffs cf = farfield_coeffs(exterior);
        const Cx gamma = alpha == WaveKind::P ? cf.gamma_p : cf.gamma_s;
        const Cx beta = alpha == WaveKind::P ? cf.beta_p : cf.beta_s;
        const Mat2c proj = alpha == WaveKind::P ? jmat(xhat) : identity2() - jmat(xhat);

        // q(t_j) column: q = radial, q' = radial_perp; q'(t_j) column:
        // q = 0, q' = radial.
        const Mat2c gq = frechet_G(exterior, alpha, xhat, f.z, f.d1, radial, radial_perp);
        const Mat2c gqp = frechet_G(exterior, alpha, xhat, f.z, f.d1, Vec2{0, 0}, radial);
        const Cx hq = frechet_g(exterior, alpha, xhat, f.d1, radial, radial_perp);
        const Cx hqp = frechet_g(exterior, alpha, xhat, f.d1, Vec2{0, 0}, radial);

        const Vec2c dcol_q =
            (w * gamma * phase) * (proj * (gq * densities.phi[j])) -
            (w * beta * phase * hq) * (proj * densities.psi[j]);
        const Vec2c dcol_qp =
            (w * gamma * phase) * (proj * (gqp * densities.phi[j])) -
            (w * beta * phase * hqp) * (proj * densities.psi[j]);

        out.a(row0, j) = dcol_q.x;
        out.a(row0 + 1, j) = dcol_q.y;
        out.a(row0, N + j) = dcol_qp.x;
        out.a(row0 + 1, N + j) = dcol_qp.y;
      }
      out.b[row0] = measured[row0] - ff.x;
      out.b[row0 + 1] = measured[row0 + 1] - ff.y;
    }
  }
  return out;
}

std::vector<double> trig_basis_matrix(const CollocationGrid& grid, int m) {
  const int N = grid.size();
  const int cols = 2 * m + 1;
  std::vector<double> t(static_cast<std::size_t>(2 * N) * cols, 0.0);
  for (int j = 0; j < N; ++j) {
    const double tj = grid.nodes[j];
    t[j * cols] = 1.0;            // value of the constant basis
    // t[(N + j) * cols] = 0     // its derivative
    for (int k = 1; k <= m; ++k) {
      t[j * cols + k] = std::cos(k * tj);
      t[j * cols + m + k] = std::sin(k * tj);
      t[(N + j) * cols + k] = -k * std::sin(k * tj);
      t[(N + j) * cols + m + k] = k * std::cos(k * tj);
    }
  }
  return t;
}

namespace {

double h1_norm(const RadialTrigCurve& q) {
  const std::vector<double> pen = sobolev_penalty(q.degree(), 1);
  double acc = pen[0] * q.a[0] * q.a[0];
  for (int k = 1; k <= q.degree(); ++k) {
    acc += pen[k] * q.a[k] * q.a[k];
    acc += pen[q.degree() + k] * q.b[k - 1] * q.b[k - 1];
  }
  return std::sqrt(acc);
}

}  // namespace

ReconstructionResult reconstruct(const ElasticMedium& interior,
                                 const ElasticMedium& exterior,
                                 const ReconstructionConfig& config,
                                 const std::vector<FarFieldStack>& data) {
  config.validate();
  const std::size_t L = config.illuminations.size();
  if (data.size() != L)
    throw ConfigError("reconstruct: one data stack per illumination required");
  const int n = config.n;
  const CollocationGrid grid(n);
  const std::size_t rows_per = 4 * static_cast<std::size_t>(grid.size());
  for (const FarFieldStack& s : data)
    if (s.size() != rows_per) throw ConfigError("reconstruct: data grid mismatch");

  const int cols = 2 * config.m + 1;
  const std::vector<double> tmat = trig_basis_matrix(grid, config.m);
  const std::vector<double> penalty = sobolev_penalty(config.m, config.p);

  RadialTrigCurve r(config.m);
  r.a[0] = config.r0;

  ReconstructionResult result;
  result.final_r = r;
  int worse_streak = 0;
  double prev_residual = -1.0;

  for (int k = 1; k <= config.max_iter; ++k) {
    const double lambda = update_lambda(config.lambda0, config.decay, k);
    const BoundaryCurve curve = r.as_curve();

    DensitySubsystem subsystem(interior, exterior, curve, n);

    CMatrix g(L * rows_per, static_cast<std::size_t>(cols));
    std::vector<Cx> b(L * rows_per);
    double residual_sq = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      const DensitySolution dens = subsystem.solve(config.illuminations[l]);
      const LinearizedRows rows =
          assemble_farfield_rows(exterior, curve, grid, dens, data[l]);
      // G-block = A * T
      for (std::size_t i = 0; i < rows_per; ++i) {
        const Cx* arow = rows.a.data() + i * rows.a.cols();
        Cx* grow = g.data() + (l * rows_per + i) * cols;
        for (int c = 0; c < cols; ++c) {
          Cx acc(0.0);
          for (std::size_t s = 0; s < rows.a.cols(); ++s)
            acc += arow[s] * tmat[s * cols + c];
          grow[c] = acc;
        }
        b[l * rows_per + i] = rows.b[i];
        residual_sq += std::norm(rows.b[i]);
      }
    }
    const double residual = std::sqrt(residual_sq);

    const std::vector<double> x = tikhonov_step(g, b, penalty, lambda);
    RadialTrigCurve q(config.m);
    q.a.assign(x.begin(), x.begin() + config.m + 1);
    q.b.assign(x.begin() + config.m + 1, x.end());

    // Positivity guard: halve the step until the radius stays positive.
    RadialTrigCurve next = r;
    bool accepted = false;
    RadialTrigCurve step = q;
    for (int h = 0; h <= 10; ++h) {
      try {
        next = radial_update(r, step, n);
        accepted = true;
        break;
      } catch (const NumericalError&) {
        for (double& c : step.a) c *= 0.5;
        for (double& c : step.b) c *= 0.5;
      }
    }
    if (!accepted)
      throw NumericalError("reconstruct: radius collapsed after 10 step halvings");

    r = next;
    const double qn = h1_norm(step);

    ReconstructionState state;
    state.r = r;
    state.lambda = lambda;
    state.iter = k;
    state.residual = residual;
    state.step_norm = qn;
    result.trajectory.push_back(state);
    result.residual_history.push_back(residual);
    result.iterations = k;

    if (qn < 1e-8) {
      result.early_stop = true;
      break;
    }
    if (prev_residual >= 0.0 && residual > prev_residual) {
      if (++worse_streak >= 3) {
        result.early_stop = true;
        break;
      }
    } else {
      worse_streak = 0;
    }
    prev_residual = residual;
  }

  result.final_r = r;
  return result;
}

}  // namespace elascat
