#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "perfo/boundary_geometry.hpp"
#include "perfo/kernels.hpp"
#include "perfo/periodic_potentials.hpp"

namespace perfo {

/// Dirichlet datum g as a function of the reference angle t.
using BoundaryData = std::function<double(double)>;

/// g(t) = a0 + sum_k a_k cos kt + b_k sin kt from [a0, a1, b1, a2, b2, ...].
BoundaryData trig_boundary_data(std::vector<double> coeffs);
BoundaryData constant_boundary_data(double value);

/// The quadruple (eps, phi, g, f) together with the hole center p and the
/// number N of Nystrom nodes. The lattice is the one carried by f.
struct ProblemData {
  double eps = 0.0;
  Vec2 p;
  BoundaryShape shape;
  BoundaryData g;
  PeriodicField f;
  int n = 256;

  const Lattice& lattice() const { return f.lattice(); }
  ProblemData with_eps(double e) const {
    ProblemData d = *this;
    d.eps = e;
    return d;
  }
};

/// Throws ContainmentError unless p is interior to Q and the hole
/// p + eps * closure(I[phi]) fits in Q.
void validate_problem(const ProblemData& data);

enum class DensityKind { rescaled, limiting, adjoint };

std::string to_string(DensityKind kind);

/// Boundary density sampled at t_j = 2 pi j / N plus the scalar unknown.
struct DensitySolution {
  std::vector<double> theta;
  double constant = 0.0;  // c#, limiting c~#, or 0 for the adjoint
  int n = 0;
  DensityKind kind = DensityKind::rescaled;
  double eps = 0.0;
  double residual = 0.0;        // relative infinity-norm residual of the dense solve
  double condition = 0.0;       // 1-norm condition estimate
  double constraint = 0.0;      // h sum_j theta_j sigma_j
};

struct LinearSystem {
  BoundaryNodes nodes;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

/// Right-hand side of the rescaled system at the nodes:
///   g(t) - P_q[f](p + eps phi(t)) + S_2(phi(t)) int f + R_q(eps phi(t)) int f.
std::vector<double> rescaled_rhs(const ProblemData& data, const BoundaryNodes& nodes);

/// Limiting datum g#_2(t) = g(t) - P_q[f](p) + S_2(phi(t)) int f + R_q(0) int f.
std::vector<double> limiting_datum(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f,
                                   const Vec2& p, int n);

LinearSystem assemble(const ProblemData& data, Execution exec = Execution::parallel);

/// Solves the rescaled system for (theta#, c#). For n = 2 the unrescaled pair
/// (theta, c) coincides with it. Throws NumericalError when the condition
/// estimate exceeds 1e12 or the residual exceeds 1e-9.
DensitySolution solve_density(const ProblemData& data);

/// eps = 0 system with right-hand side g#_2.
DensitySolution solve_limit(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f, const Vec2& p,
                            int n);

/// tau~ with -tau/2 + int nu(t) . DS_2(phi(t) - phi(s)) tau(s) sigma(s) ds = 0 and int tau sigma = 1.
DensitySolution adjoint_density(const BoundaryShape& shape, int n);

/// c~# = int g#_2 tau~ sigma by the trapezoid rule.
double limit_constant(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f, const Vec2& p, int n);

}  // namespace perfo
