#ifndef ELASCAT_GEOMETRY_HPP
#define ELASCAT_GEOMETRY_HPP

#include <functional>
#include <vector>

#include "elascat/core.hpp"

namespace elascat {

// 2pi-periodic C^2 parametrization z(t) with nonvanishing z'(t), given as
// closures together with its analytic derivatives.
struct BoundaryCurve {
  std::function<Vec2(double)> eval;
  std::function<Vec2(double)> deriv1;
  std::function<Vec2(double)> deriv2;
};

struct CurveFrame {
  Vec2 z;
  Vec2 d1;
  Vec2 d2;
  double speed;    // |z'|
  Vec2 normal;     // Q z' / |z'|, points into the exterior
  Vec2 tangent;    // z' / |z'|
};

CurveFrame frame(const BoundaryCurve& curve, double t);

// The three benchmark shapes.
BoundaryCurve peanut();
BoundaryCurve apple();
BoundaryCurve kite();
BoundaryCurve circle(double radius);

// Starlike curve z(t) = r(t) (cos t, sin t) with r a trigonometric
// polynomial  r(t) = sum a_k cos kt + sum b_k sin kt.
struct RadialTrigCurve {
  std::vector<double> a;  // a_0 .. a_m
  std::vector<double> b;  // b_1 .. b_m

  RadialTrigCurve() : RadialTrigCurve(0) {}
  explicit RadialTrigCurve(int m) : a(m + 1, 0.0), b(m, 0.0) {}
  RadialTrigCurve(std::vector<double> a_, std::vector<double> b_);

  int degree() const { return static_cast<int>(b.size()); }
  double radius(double t) const;
  double radius_d1(double t) const;
  double radius_d2(double t) const;

  BoundaryCurve as_curve() const;
};

// Coefficient-wise r + q; rejects updates that make the radius non-positive
// on the 2n-point grid used by the inversion.
RadialTrigCurve radial_update(const RadialTrigCurve& r, const RadialTrigCurve& q,
                              int grid_half_count);

// Returns true if r stays positive on the grid.
bool radial_positive(const RadialTrigCurve& r, int grid_half_count);

struct PerturbationField {
  Vec2 q;   // q(t) (cos t, sin t)
  Vec2 dq;  // derivative of the above
  Vec2 v;   // Q dq, the tangential piece of the derivative kernels
};

PerturbationField perturbation_field(const RadialTrigCurve& q, double t);

// Equidistant collocation points t_j = j pi / n, j = 0 .. 2n-1.
struct CollocationGrid {
  int n;
  std::vector<double> nodes;

  explicit CollocationGrid(int n_);
  int size() const { return 2 * n; }
};

// Trig interpolation: samples on a CollocationGrid -> coefficients of degree m.
RadialTrigCurve trig_fit(const std::vector<double>& samples, int m);

// Polar radius of a starlike curve in direction theta (bisection on the
// curve's angle function).
double polar_radius(const BoundaryCurve& curve, double theta);

// L2(0, 2pi) distance between the polar radius functions of two starlike
// curves, by trapezoidal rule on a fine grid.
double radial_l2_distance(const BoundaryCurve& a, const BoundaryCurve& b,
                          int samples = 512);

// Winding number of the curve around a point (integer for points off the
// curve); used to validate source-point placement.
int winding_number(const BoundaryCurve& curve, Vec2 p, int samples = 1024);

}  // namespace elascat

#endif
