#pragma once

#include <span>
#include <vector>

#include "perfo/lattice_green.hpp"
#include "perfo/vec2.hpp"

namespace perfo {

/// Pointwise geometry of the hole boundary at one reference angle t.
struct ShapeKinematics {
  Vec2 point;
  Vec2 tangent;         // d/dt of the parametrization
  Vec2 outward_normal;  // unit, pointing away from the bounded component
  double sigma_tilde;   // |tangent|: arc-length density w.r.t. the unit reference circle
  double curvature;
};

/// Quadrature nodes t_j = 2 pi j / N with the geometry sampled at each node.
struct BoundaryNodes {
  int count = 0;
  double step = 0.0;  // 2 pi / N
  std::vector<double> angle;
  std::vector<Vec2> point;
  std::vector<Vec2> normal;
  std::vector<double> sigma;
  std::vector<double> curvature;

  /// Trapezoid rule sum_j values_j sigma_j step.
  double integrate(std::span<const double> values) const;
  /// Largest arc-length distance between consecutive nodes (approximate: max sigma * step).
  double max_spacing() const;
};

/// Closed curve given as a real trigonometric polynomial in the angle of the
/// unit reference circle:
///
///   x(t) = a0x + sum_k a_kx cos kt + b_kx sin kt
///   y(t) = a0y + sum_k a_ky cos kt + b_ky sin kt
///
/// Flat coefficient layout: [a0x, a0y, a1x, b1x, a1y, b1y, a2x, b2x, a2y, b2y, ...].
/// Construction validates that the curve is regular, simple and counterclockwise.
class BoundaryShape {
 public:
  static BoundaryShape from_coefficients(std::span<const double> flat);

  static BoundaryShape circle(double radius = 1.0, Vec2 center = {});
  static BoundaryShape ellipse(double a, double b);
  /// r(t) = 1 + sum_m amp_m cos(m t + phase_m), as a trig polynomial in Cartesian form.
  static BoundaryShape radial_perturbation(std::span<const int> modes, std::span<const double> amplitudes,
                                           std::span<const double> phases);

  int max_degree() const { return static_cast<int>(ax_.size()) - 1; }
  std::vector<double> coefficients() const;

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;
  Vec2 second_derivative(double t) const;
  ShapeKinematics kinematics(double t) const;

  BoundaryNodes sample(int n) const;

  /// Same curve reparametrized by t -> t + shift.
  BoundaryShape shifted(double shift) const;

  /// Axis-aligned bounding box of 4096 curve samples.
  void bounding_box(Vec2& lo, Vec2& hi) const;
  double area() const;
  double length() const;

 private:
  BoundaryShape() = default;
  void validate() const;

  std::vector<double> ax_, bx_, ay_, by_;  // index = degree; bx_[0], by_[0] unused
};

/// True iff p + eps * closure(I[phi]) fits in the open cell with margin 1e-9,
/// decided on the bounding box of eps * (curve samples). p must lie in Q.
bool hole_containment_check(const Lattice& lattice, const Vec2& p, double eps, const BoundaryShape& shape);

}  // namespace perfo
