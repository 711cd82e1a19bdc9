#pragma once

#include <span>
#include <vector>

#include "perfo/bie_solver.hpp"
#include "perfo/kernels.hpp"

namespace perfo {

/// Additive breakdown of u at one point:
///   u = double_layer + constant + newtonian + corrector + log_term,
/// and the analytic part ufrak is u without log_term.
struct FieldParts {
  double double_layer = 0.0;
  double constant = 0.0;
  double newtonian = 0.0;
  double corrector = 0.0;
  double log_term = 0.0;
};

struct FieldSample {
  Vec2 point;
  double u = 0.0;
  double ufrak = 0.0;
  FieldParts parts;
};

/// Bulk points of the perforated domain together with their clearance, the
/// distance to the nearest translate of the hole boundary.
struct EvaluationSet {
  std::vector<Vec2> points;
  std::vector<double> clearance;
};

/// Field evaluator for one solved problem.
///
/// The periodic double layer is summed with the trapezoid rule on
/// quadrature_n nodes (the density is trigonometrically resampled when
/// quadrature_n differs from the solve resolution; 0 means twice the solve
/// resolution). Points inside a hole or within three quadrature node spacings
/// of a hole boundary are rejected with SingularPoint.
class FieldEvaluator {
 public:
  FieldEvaluator(const ProblemData& data, const DensitySolution& density, int quadrature_n = 0);

  const ProblemData& problem() const { return data_; }
  int quadrature_nodes() const { return nodes_.count; }
  /// Minimal admissible distance to a hole boundary.
  double guard_distance() const;

  /// Throws SingularPoint unless every point is admissible.
  EvaluationSet admit(std::span<const Vec2> points) const;

  /// u and ufrak at x. For eps <= 0 the log term is reported as 0 and u is
  /// left equal to ufrak (u itself is only defined for eps > 0).
  FieldSample sample(const Vec2& x) const;
  std::vector<FieldSample> sample(std::span<const Vec2> points, Execution exec = Execution::parallel) const;

 private:
  double clearance(const Vec2& x) const;
  FieldSample closed_form_terms(const Vec2& x) const;

  ProblemData data_;
  DensitySolution density_;
  BoundaryNodes nodes_;
  std::vector<double> theta_;
  CorrectedPotential potential_;
  // Reference-frame polygon of the curve used for the inside test.
  BoundaryNodes outline_;
};

/// u[eps, phi, g, f](x); requires eps > 0 and a rescaled density for this data.
FieldSample eval_u(const ProblemData& data, const DensitySolution& density, const Vec2& x);
/// ufrak[eps, phi, g, f](x); valid for eps = 0 and for negative eps.
double eval_ufrak(const ProblemData& data, const DensitySolution& density, const Vec2& x);

/// Limiting exterior field w^-[theta~](x) + c~ outside the reference hole.
/// Throws SingularPoint inside the curve or within three node spacings of it.
double eval_limit_field(const BoundaryShape& shape, const DensitySolution& limit, const Vec2& x,
                        int quadrature_n = 0);

/// Winding-number test against the closed polygon through the nodes.
bool inside_polygon(const BoundaryNodes& nodes, const Vec2& x);

}  // namespace perfo
