#ifndef ELASCAT_FORWARD_HPP
#define ELASCAT_FORWARD_HPP

#include "elascat/quadrature.hpp"

namespace elascat {

enum class Representation { Combined, SingleLayer, DoubleLayer, DirectMethod };

struct ScatteringProblem {
  ElasticMedium interior;
  ElasticMedium exterior;
  BoundaryCurve curve;
  CollocationGrid grid;

  ScatteringProblem(ElasticMedium interior_, ElasticMedium exterior_,
                    BoundaryCurve curve_, int n);
};

// Dirichlet/Neumann data at the collocation nodes: (u_inc, T^e u_inc) for
// physical scattering or the analytic (f, g) pair for verification.
struct BoundaryData {
  std::vector<Vec2c> dirichlet;
  std::vector<Vec2c> neumann;
};

struct DensitySolution {
  Representation representation;
  std::vector<Vec2c> phi;  // phi (combined), psi_i (layer reps), xi (direct method)
  std::vector<Vec2c> psi;  // psi (combined), psi_e (layer reps), zeta (direct method)
};

struct FarFieldPattern {
  std::vector<double> angles;
  std::vector<Vec2c> up;
  std::vector<Vec2c> us;
};

std::vector<double> farfield_angles(int n);

BoundaryData incident_boundary_data(const ScatteringProblem& problem,
                                    const IncidentWave& wave);

// Point-source combination of first columns of the fundamental tensors; the
// sources must lie strictly inside (z_i) and outside (z_e) the boundary.
BoundaryData analytic_boundary_data(const ScatteringProblem& problem, Vec2 z_i,
                                    Vec2 z_e);

// Exact far field of the point source at z_i in the exterior medium.
FarFieldPattern analytic_far_field(const ElasticMedium& exterior, Vec2 z_i,
                                   const std::vector<double>& angles);

DensitySolution solve_direct_combined(const ScatteringProblem& problem,
                                      const BoundaryData& data);
DensitySolution solve_direct_single(const ScatteringProblem& problem,
                                    const BoundaryData& data);
DensitySolution solve_direct_double(const ScatteringProblem& problem,
                                    const BoundaryData& data);

FarFieldPattern far_field(const ScatteringProblem& problem, const DensitySolution& sol);
FarFieldPattern far_field(const ScatteringProblem& problem, const DensitySolution& sol,
                          const std::vector<double>& angles);

// Field evaluation away from the boundary via the representation formula.
Vec2c evaluate_field(const ScatteringProblem& problem, const DensitySolution& sol,
                     Vec2 x, bool interior_side);

struct ConvergenceRow {
  int n;
  double err_p;
  double err_s;
  Cx sample_p;  // first component of u_p at angle 0, for reporting
  Cx sample_s;  // second component of u_s at angle pi/2
};

std::vector<ConvergenceRow> convergence_study(const ElasticMedium& interior,
                                              const ElasticMedium& exterior,
                                              const BoundaryCurve& curve, Vec2 z_i,
                                              Vec2 z_e, const std::vector<int>& n_list,
                                              Representation representation);

double combined_system_condition(const ScatteringProblem& problem);

double sup_node_error(const std::vector<Vec2c>& a, const std::vector<Vec2c>& b);

}  // namespace elascat

#endif
