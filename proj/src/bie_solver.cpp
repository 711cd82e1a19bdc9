#include "perfo/bie_solver.hpp"

#include <cmath>
#include <sstream>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kMaxResidual = 1e-9;

DensitySolution dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const BoundaryNodes& nodes,
                            DensityKind kind, double eps) {
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double rcond = lu.rcond();
  const double condition = rcond > 0.0 ? 1.0 / rcond : INFINITY;
  if (!(condition <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "solver: assembled matrix is nearly singular (condition estimate " << condition << ", eps = " << eps << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd x = lu.solve(b);
  const double scale = a.cwiseAbs().rowwise().sum().maxCoeff() * x.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff();
  const double residual = scale > 0.0 ? (a * x - b).cwiseAbs().maxCoeff() / scale : 0.0;
  if (!(residual <= kMaxResidual)) {
    std::ostringstream msg;
    msg << "solver: residual " << residual << " exceeds " << kMaxResidual << " (eps = " << eps << ")";
    throw NumericalError(msg.str());
  }

  const int n = nodes.count;
  DensitySolution s;
  s.theta.assign(x.data(), x.data() + n);
  s.constant = x(n);
  s.n = n;
  s.kind = kind;
  s.eps = eps;
  s.residual = residual;
  s.condition = condition;
  s.constraint = nodes.integrate(s.theta);
  return s;
}

}  // namespace

BoundaryData trig_boundary_data(std::vector<double> coeffs) {
  if (coeffs.empty() || coeffs.size() % 2 == 0)
    throw InvalidArgument("boundary data: expected [a0, a1, b1, ...] with odd length");
  return [c = std::move(coeffs)](double t) {
    double v = c[0];
    for (std::size_t k = 1; 2 * k < c.size() + 1; ++k)
      v += c[2 * k - 1] * std::cos(k * t) + c[2 * k] * std::sin(k * t);
    return v;
  };
}

BoundaryData constant_boundary_data(double value) {
  return [value](double) { return value; };
}

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::rescaled: return "rescaled";
    case DensityKind::limiting: return "limiting";
    case DensityKind::adjoint: return "adjoint";
  }
  return "unknown";
}

void validate_problem(const ProblemData& data) {
  if (!data.g) throw InvalidArgument("problem: boundary datum g is empty");
  if (data.n < 8) throw InvalidArgument("problem: N must be at least 8");
  if (!data.lattice().contains(data.p)) throw ContainmentError("problem: p must lie in the open cell Q");
  if (!hole_containment_check(data.lattice(), data.p, data.eps, data.shape)) {
    std::ostringstream msg;
    msg << "problem: containment condition p + eps * closure(I[phi]) in Q fails for eps = " << data.eps;
    throw ContainmentError(msg.str());
  }
}

std::vector<double> rescaled_rhs(const ProblemData& data, const BoundaryNodes& nodes) {
  const CorrectedPotential potential(data.f, data.p);
  const LatticeGreen& green = potential.green();
  const double mass = potential.source_integral();
  std::vector<double> rhs(nodes.count);
  for (int i = 0; i < nodes.count; ++i) {
    const Vec2& y = nodes.point[i];
    double v = data.g(nodes.angle[i]) - potential.newtonian_at(data.p + data.eps * y);
    if (mass != 0.0) v += (classical_green(y) + green.remainder(data.eps * y)) * mass;
    rhs[i] = v;
  }
  return rhs;
}

std::vector<double> limiting_datum(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f,
                                   const Vec2& p, int n) {
  ProblemData data{0.0, p, shape, g, f, n};
  return rescaled_rhs(data, shape.sample(n));
}

LinearSystem assemble(const ProblemData& data, Execution exec) {
  validate_problem(data);
  LinearSystem sys{data.shape.sample(data.n), {}, {}};
  const LatticeGreen green(data.lattice());
  sys.matrix = assemble_rescaled_matrix(sys.nodes, green, data.eps, exec);
  const std::vector<double> rhs = rescaled_rhs(data, sys.nodes);
  sys.rhs = Eigen::VectorXd::Zero(data.n + 1);
  for (int i = 0; i < data.n; ++i) sys.rhs(i) = rhs[i];
  return sys;
}

DensitySolution solve_density(const ProblemData& data) {
  const LinearSystem sys = assemble(data);
  return dense_solve(sys.matrix, sys.rhs, sys.nodes, DensityKind::rescaled, data.eps);
}

DensitySolution solve_limit(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f, const Vec2& p,
                            int n) {
  const LinearSystem sys = assemble(ProblemData{0.0, p, shape, g, f, n});
  return dense_solve(sys.matrix, sys.rhs, sys.nodes, DensityKind::limiting, 0.0);
}

DensitySolution adjoint_density(const BoundaryShape& shape, int n) {
  const BoundaryNodes nodes = shape.sample(n);
  const Eigen::MatrixXd a = assemble_adjoint_matrix(nodes);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b(n) = 1.0;
  DensitySolution s = dense_solve(a, b, nodes, DensityKind::adjoint, 0.0);
  // The bordering multiplier vanishes for a consistent system; it is not part of tau~.
  s.constant = 0.0;
  return s;
}

double limit_constant(const BoundaryShape& shape, const BoundaryData& g, const PeriodicField& f, const Vec2& p,
                      int n) {
  const DensitySolution tau = adjoint_density(shape, n);
  const BoundaryNodes nodes = shape.sample(n);
  const std::vector<double> datum = limiting_datum(shape, g, f, p, n);
  std::vector<double> product(n);
  for (int j = 0; j < n; ++j) product[j] = datum[j] * tau.theta[j];
  return nodes.integrate(product);
}

}  // namespace perfo
