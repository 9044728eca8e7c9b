#include "elascat/forward.hpp"

#include <cmath>

namespace elascat {

ScatteringProblem::ScatteringProblem(ElasticMedium interior_, ElasticMedium exterior_,
                                     BoundaryCurve curve_, int n)
    : interior(interior_), exterior(exterior_), curve(std::move(curve_)), grid(n) {
  if (std::abs(interior.omega - exterior.omega) > 1e-14)
    throw ConfigError("ScatteringProblem: media must share the frequency");
}

std::vector<double> farfield_angles(int n) {
  return CollocationGrid(n).nodes;
}

BoundaryData incident_boundary_data(const ScatteringProblem& p, const IncidentWave& w) {
  BoundaryData d;
  const int N = p.grid.size();
  d.dirichlet.resize(N);
  d.neumann.resize(N);
  for (int j = 0; j < N; ++j) {
    const CurveFrame f = frame(p.curve, p.grid.nodes[j]);
    d.dirichlet[j] = incident_field(w, p.exterior, f.z);
    d.neumann[j] = incident_traction(w, p.exterior, f.z, f.normal);
  }
  return d;
}

BoundaryData analytic_boundary_data(const ScatteringProblem& p, Vec2 z_i, Vec2 z_e) {
  if (winding_number(p.curve, z_i) != 1)
    throw ConfigError("analytic_boundary_data: z_i is not inside the boundary");
  if (winding_number(p.curve, z_e) != 0)
    throw ConfigError("analytic_boundary_data: z_e is not outside the boundary");
  BoundaryData d;
  const int N = p.grid.size();
  d.dirichlet.resize(N);
  d.neumann.resize(N);
  for (int j = 0; j < N; ++j) {
    const CurveFrame f = frame(p.curve, p.grid.nodes[j]);
    const Mat2c phi_i = fundamental_tensor(p.interior, f.z, z_e);
    const Mat2c phi_e = fundamental_tensor(p.exterior, f.z, z_i);
    d.dirichlet[j] = column(phi_i, 0) - column(phi_e, 0);
    const Mat2c tr_i = single_traction_kernel(p.interior, f.z, f.normal, z_e);
    const Mat2c tr_e = single_traction_kernel(p.exterior, f.z, f.normal, z_i);
    d.neumann[j] = column(tr_i, 0) - column(tr_e, 0);
  }
  return d;
}

FarFieldPattern analytic_far_field(const ElasticMedium& exterior, Vec2 z_i,
                                   const std::vector<double>& angles) {
  FarFieldPattern f;
  f.angles = angles;
  f.up.resize(angles.size());
  f.us.resize(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const Vec2 xhat{std::cos(angles[k]), std::sin(angles[k])};
    f.up[k] = column(farfield_single_kernel(exterior, WaveKind::P, xhat, z_i), 0);
    f.us[k] = column(farfield_single_kernel(exterior, WaveKind::S, xhat, z_i), 0);
  }
  return f;
}

namespace {

std::vector<Cx> interleave(const std::vector<Vec2c>& v) {
  std::vector<Cx> out(2 * v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[2 * j] = v[j].x;
    out[2 * j + 1] = v[j].y;
  }
  return out;
}

std::vector<Vec2c> deinterleave(const std::vector<Cx>& v, std::size_t offset,
                                std::size_t count) {
  std::vector<Vec2c> out(count);
  for (std::size_t j = 0; j < count; ++j)
    out[j] = {v[offset + 2 * j], v[offset + 2 * j + 1]};
  return out;
}

}  // namespace

DensitySolution solve_direct_combined(const ScatteringProblem& p, const BoundaryData& d) {
  const int N = p.grid.size();
  const std::size_t m = 2 * static_cast<std::size_t>(N);
  const double ti = tau(p.interior), te = tau(p.exterior);

  const DiscreteOperator a11 = split_and_assemble(
      combine_splits(traction_split(p.interior, p.curve), traction_split(p.exterior, p.curve),
                     Cx(1.0), Cx(-1.0)),
      p.grid, "L_i - L_e");
  const DiscreteOperator a12 = split_and_assemble(
      combine_splits(hyper_difference_split(p.interior, p.curve),
                     hyper_difference_split(p.exterior, p.curve), Cx(ti), Cx(-te)),
      p.grid, "tau_i N_i - tau_e N_e");
  const DiscreteOperator a21 = split_and_assemble(
      combine_splits(single_layer_split(p.interior, p.curve),
                     single_layer_split(p.exterior, p.curve), Cx(1.0), Cx(-1.0)),
      p.grid, "S_i - S_e");
  const DiscreteOperator a22 = split_and_assemble(
      combine_splits(double_layer_split(p.interior, p.curve),
                     double_layer_split(p.exterior, p.curve), Cx(ti), Cx(-te)),
      p.grid, "tau_i K_i - tau_e K_e");

  CMatrix sys(2 * m, 2 * m);
  insert_block(sys, a11.mat, 0, 0);
  insert_block(sys, a12.mat, 0, m);
  insert_block(sys, a21.mat, m, 0);
  insert_block(sys, a22.mat, m, m);
  add_scaled_identity(sys, Cx(1.0), 0, 0, m);
  add_scaled_identity(sys, Cx(-0.5 * (ti + te)), m, m, m);

  std::vector<Cx> rhs(2 * m);
  const std::vector<Cx> g = interleave(d.neumann), f = interleave(d.dirichlet);
  std::copy(g.begin(), g.end(), rhs.begin());
  std::copy(f.begin(), f.end(), rhs.begin() + m);

  const std::vector<Cx> x = solve(sys, rhs);
  DensitySolution sol;
  sol.representation = Representation::Combined;
  sol.psi = deinterleave(x, 0, N);
  sol.phi = deinterleave(x, m, N);
  return sol;
}

DensitySolution solve_direct_single(const ScatteringProblem& p, const BoundaryData& d) {
  const int N = p.grid.size();
  const std::size_t m = 2 * static_cast<std::size_t>(N);

  const DiscreteOperator s_i =
      split_and_assemble(single_layer_split(p.interior, p.curve), p.grid, "S_i");
  const DiscreteOperator s_e =
      split_and_assemble(single_layer_split(p.exterior, p.curve), p.grid, "S_e");
  const DiscreteOperator l_i =
      split_and_assemble(traction_split(p.interior, p.curve), p.grid, "L_i");
  const DiscreteOperator l_e =
      split_and_assemble(traction_split(p.exterior, p.curve), p.grid, "L_e");

  CMatrix sys(2 * m, 2 * m);
  insert_block(sys, s_i.mat, 0, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sys(i, m + j) = -s_e.mat(i, j);
  insert_block(sys, l_i.mat, m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sys(m + i, m + j) = -l_e.mat(i, j);
  add_scaled_identity(sys, Cx(0.5), m, 0, m);
  add_scaled_identity(sys, Cx(0.5), m, m, m);

  std::vector<Cx> rhs(2 * m);
  const std::vector<Cx> f = interleave(d.dirichlet), g = interleave(d.neumann);
  std::copy(f.begin(), f.end(), rhs.begin());
  std::copy(g.begin(), g.end(), rhs.begin() + m);

  const std::vector<Cx> x = solve(sys, rhs);
  DensitySolution sol;
  sol.representation = Representation::SingleLayer;
  sol.phi = deinterleave(x, 0, N);
  sol.psi = deinterleave(x, m, N);
  return sol;
}

DensitySolution solve_direct_double(const ScatteringProblem& p, const BoundaryData& d) {
  const int N = p.grid.size();
  const std::size_t m = 2 * static_cast<std::size_t>(N);

  const DiscreteOperator k_i =
      split_and_assemble(double_layer_split(p.interior, p.curve), p.grid, "K_i");
  const DiscreteOperator k_e =
      split_and_assemble(double_layer_split(p.exterior, p.curve), p.grid, "K_e");
  const DiscreteOperator nd_i = split_and_assemble(
      hyper_difference_split(p.interior, p.curve), p.grid, "N_i - N0_i");
  const DiscreteOperator nd_e = split_and_assemble(
      hyper_difference_split(p.exterior, p.curve), p.grid, "N_e - N0_e");
  const DiscreteOperator n0_i =
      assemble_static_hyper(p.interior, p.curve, p.grid, "N0_i");
  const DiscreteOperator n0_e =
      assemble_static_hyper(p.exterior, p.curve, p.grid, "N0_e");

  CMatrix sys(2 * m, 2 * m);
  insert_block(sys, k_i.mat, 0, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) sys(i, m + j) = -k_e.mat(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      sys(m + i, j) = nd_i.mat(i, j) + n0_i.mat(i, j);
      sys(m + i, m + j) = -(nd_e.mat(i, j) + n0_e.mat(i, j));
    }
  add_scaled_identity(sys, Cx(-0.5), 0, 0, m);
  add_scaled_identity(sys, Cx(-0.5), 0, m, m);

  std::vector<Cx> rhs(2 * m);
  const std::vector<Cx> f = interleave(d.dirichlet), g = interleave(d.neumann);
  std::copy(f.begin(), f.end(), rhs.begin());
  std::copy(g.begin(), g.end(), rhs.begin() + m);

  const std::vector<Cx> x = solve(sys, rhs);
  DensitySolution sol;
  sol.representation = Representation::DoubleLayer;
  sol.phi = deinterleave(x, 0, N);
  sol.psi = deinterleave(x, m, N);
  return sol;
}

FarFieldPattern far_field(const ScatteringProblem& p, const DensitySolution& sol) {
  return far_field(p, sol, farfield_angles(p.grid.n));
}

FarFieldPattern far_field(const ScatteringProblem& p, const DensitySolution& sol,
                          const std::vector<double>& angles) {
  const int N = p.grid.size();
  const double w = kPi / p.grid.n;
  const double te = tau(p.exterior);

  std::vector<CurveFrame> frames(N);
  for (int j = 0; j < N; ++j) frames[j] = frame(p.curve, p.grid.nodes[j]);

  FarFieldPattern out;
  out.angles = angles;
  out.up.resize(angles.size());
  out.us.resize(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const Vec2 xhat{std::cos(angles[k]), std::sin(angles[k])};
    for (const WaveKind alpha : {WaveKind::P, WaveKind::S}) {
      Vec2c acc{};
      for (int j = 0; j < N; ++j) {
        const CurveFrame& f = frames[j];
        const double wt = w * f.speed;
        Vec2c term{};
        switch (sol.representation) {
          case Representation::Combined:
            term = Cx(te) * (farfield_double_kernel(p.exterior, alpha, xhat, f.z,
                                                    f.normal) *
                             sol.phi[j]) +
                   farfield_single_kernel(p.exterior, alpha, xhat, f.z) * sol.psi[j];
            break;
          case Representation::SingleLayer:
            term = farfield_single_kernel(p.exterior, alpha, xhat, f.z) * sol.psi[j];
            break;
          case Representation::DoubleLayer:
            term = farfield_double_kernel(p.exterior, alpha, xhat, f.z, f.normal) *
                   sol.psi[j];
            break;
          case Representation::DirectMethod:
            term = farfield_double_kernel(p.exterior, alpha, xhat, f.z, f.normal) *
                       sol.phi[j] -
                   farfield_single_kernel(p.exterior, alpha, xhat, f.z) * sol.psi[j];
            break;
        }
        acc = acc + wt * term;
      }
      if (alpha == WaveKind::P)
        out.up[k] = acc;
      else
        out.us[k] = acc;
    }
  }
  return out;
}

Vec2c evaluate_field(const ScatteringProblem& p, const DensitySolution& sol, Vec2 x,
                     bool interior_side) {
  const ElasticMedium& med = interior_side ? p.interior : p.exterior;
  const double tj = interior_side ? tau(p.interior) : tau(p.exterior);
  const int N = p.grid.size();
  const double w = kPi / p.grid.n;
  Vec2c acc{};
  for (int j = 0; j < N; ++j) {
    const CurveFrame f = frame(p.curve, p.grid.nodes[j]);
    const double wt = w * f.speed;
    Vec2c term{};
    switch (sol.representation) {
      case Representation::Combined:
        term = Cx(tj) * (double_layer_kernel(med, x, f.z, f.normal) * sol.phi[j]) +
               fundamental_tensor(med, x, f.z) * sol.psi[j];
        break;
      case Representation::SingleLayer:
        term = fundamental_tensor(med, x, f.z) * (interior_side ? sol.phi[j] : sol.psi[j]);
        break;
      case Representation::DoubleLayer:
        term = double_layer_kernel(med, x, f.z, f.normal) *
               (interior_side ? sol.phi[j] : sol.psi[j]);
        break;
      case Representation::DirectMethod: {
        const Vec2c betti = double_layer_kernel(med, x, f.z, f.normal) * sol.phi[j] -
                            fundamental_tensor(med, x, f.z) * sol.psi[j];
        term = interior_side ? Cx(-1.0) * betti : betti;
        break;
      }
    }
    acc = acc + wt * term;
  }
  return acc;
}

double sup_node_error(const std::vector<Vec2c>& a, const std::vector<Vec2c>& b) {
  if (a.size() != b.size()) throw NumericalError("sup_node_error: size mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, norm(a[j] - b[j]));
  return m;
}

std::vector<ConvergenceRow> convergence_study(const ElasticMedium& interior,
                                              const ElasticMedium& exterior,
                                              const BoundaryCurve& curve, Vec2 z_i,
                                              Vec2 z_e, const std::vector<int>& n_list,
                                              Representation representation) {
  std::vector<ConvergenceRow> rows;
  for (const int n : n_list) {
    ScatteringProblem problem(interior, exterior, curve, n);
    const BoundaryData data = analytic_boundary_data(problem, z_i, z_e);
    DensitySolution sol;
    switch (representation) {
      case Representation::Combined:
        sol = solve_direct_combined(problem, data);
        break;
      case Representation::SingleLayer:
        sol = solve_direct_single(problem, data);
        break;
      case Representation::DoubleLayer:
        sol = solve_direct_double(problem, data);
        break;
      default:
        throw ConfigError("convergence_study: unsupported representation");
    }
    const FarFieldPattern computed = far_field(problem, sol);
    const FarFieldPattern exact = analytic_far_field(exterior, z_i, computed.angles);
    ConvergenceRow row;
    row.n = n;
    row.err_p = sup_node_error(computed.up, exact.up);
    row.err_s = sup_node_error(computed.us, exact.us);
    row.sample_p = computed.up[0].x;
    row.sample_s = computed.us[computed.us.size() / 4].y;
    rows.push_back(row);
  }
  return rows;
}

double combined_system_condition(const ScatteringProblem& p) {
  const int N = p.grid.size();
  const std::size_t m = 2 * static_cast<std::size_t>(N);
  const double ti = tau(p.interior), te = tau(p.exterior);
  const DiscreteOperator a11 = split_and_assemble(
      combine_splits(traction_split(p.interior, p.curve), traction_split(p.exterior, p.curve),
                     Cx(1.0), Cx(-1.0)),
      p.grid, "L_i - L_e");
  const DiscreteOperator a12 = split_and_assemble(
      combine_splits(hyper_difference_split(p.interior, p.curve),
                     hyper_difference_split(p.exterior, p.curve), Cx(ti), Cx(-te)),
      p.grid, "combined N");
  const DiscreteOperator a21 = split_and_assemble(
      combine_splits(single_layer_split(p.interior, p.curve),
                     single_layer_split(p.exterior, p.curve), Cx(1.0), Cx(-1.0)),
      p.grid, "S_i - S_e");
  const DiscreteOperator a22 = split_and_assemble(
      combine_splits(double_layer_split(p.interior, p.curve),
                     double_layer_split(p.exterior, p.curve), Cx(ti), Cx(-te)),
      p.grid, "combined K");
  CMatrix sys(2 * m, 2 * m);
  insert_block(sys, a11.mat, 0, 0);
  insert_block(sys, a12.mat, 0, m);
  insert_block(sys, a21.mat, m, 0);
  insert_block(sys, a22.mat, m, m);
  add_scaled_identity(sys, Cx(1.0), 0, 0, m);
  add_scaled_identity(sys, Cx(-0.5 * (ti + te)), m, m, m);
  return condition_estimate(sys);
}

}  // namespace elascat
