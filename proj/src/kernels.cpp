#include "perfo/kernels.hpp"

#include <numbers>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

double classical_entry(const BoundaryNodes& nodes, int i, int j) {
  if (i == j) return nodes.curvature[j] * nodes.sigma[j] / kFourPi;
  const Vec2 d = nodes.point[i] - nodes.point[j];
  return -dot(nodes.normal[j], d) / (kTwoPi * norm2(d)) * nodes.sigma[j];
}

double adjoint_entry(const BoundaryNodes& nodes, int i, int j) {
  if (i == j) return nodes.curvature[i] * nodes.sigma[i] / kFourPi;
  const Vec2 d = nodes.point[i] - nodes.point[j];
  return dot(nodes.normal[i], d) / (kTwoPi * norm2(d)) * nodes.sigma[j];
}

void fill_rescaled_row(Eigen::MatrixXd& a, const BoundaryNodes& nodes, const LatticeGreen& green, double eps, int i) {
  const int n = nodes.count;
  const double h = nodes.step;
  for (int j = 0; j < n; ++j) {
    double v = h * classical_entry(nodes, i, j);
    if (eps != 0.0 && i != j) {
      const Vec2 dr = green.remainder_gradient(eps * (nodes.point[i] - nodes.point[j]));
      v -= eps * h * dot(nodes.normal[j], dr) * nodes.sigma[j];
    }
    if (i == j) v -= 0.5;
    a(i, j) = v;
  }
  a(i, n) = 1.0;
}

void fill_adjoint_row(Eigen::MatrixXd& a, const BoundaryNodes& nodes, int i) {
  const int n = nodes.count;
  for (int j = 0; j < n; ++j) a(i, j) = nodes.step * adjoint_entry(nodes, i, j) - (i == j ? 0.5 : 0.0);
  a(i, n) = 1.0;
}

void fill_constraint_row(Eigen::MatrixXd& a, const BoundaryNodes& nodes) {
  const int n = nodes.count;
  for (int j = 0; j < n; ++j) a(n, j) = nodes.step * nodes.sigma[j];
  a(n, n) = 0.0;
}

}  // namespace

Eigen::MatrixXd assemble_rescaled_matrix(const BoundaryNodes& nodes, const LatticeGreen& green, double eps,
                                         Execution exec) {
  const int n = nodes.count;
  Eigen::MatrixXd a(n + 1, n + 1);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fill_rescaled_row(a, nodes, green, eps, i);
  } else {
    for (int i = 0; i < n; ++i) fill_rescaled_row(a, nodes, green, eps, i);
  }
  fill_constraint_row(a, nodes);
  return a;
}

Eigen::MatrixXd assemble_adjoint_matrix(const BoundaryNodes& nodes, Execution exec) {
  const int n = nodes.count;
  Eigen::MatrixXd a(n + 1, n + 1);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fill_adjoint_row(a, nodes, i);
  } else {
    for (int i = 0; i < n; ++i) fill_adjoint_row(a, nodes, i);
  }
  fill_constraint_row(a, nodes);
  return a;
}

void periodic_double_layer(const BoundaryNodes& nodes, std::span<const double> density, const LatticeGreen& green,
                           const Vec2& p, double eps, std::span<const Vec2> targets, std::span<double> out,
                           Execution exec) {
  if (density.size() != static_cast<std::size_t>(nodes.count) || out.size() != targets.size())
    throw InvalidArgument("periodic_double_layer: size mismatch");
  const int m = static_cast<int>(targets.size());
  auto one = [&](int k) {
    double sum = 0.0;
    if (eps != 0.0) {
      for (int j = 0; j < nodes.count; ++j) {
        const Vec2 g = green.periodic_gradient(targets[k] - p - eps * nodes.point[j]);
        sum += dot(nodes.normal[j], g) * density[j] * nodes.sigma[j];
      }
    }
    out[k] = -eps * nodes.step * sum;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < m; ++k) one(k);
  } else {
    for (int k = 0; k < m; ++k) one(k);
  }
}

void classical_double_layer(const BoundaryNodes& nodes, std::span<const double> density,
                            std::span<const Vec2> targets, std::span<double> out, Execution exec) {
  if (density.size() != static_cast<std::size_t>(nodes.count) || out.size() != targets.size())
    throw InvalidArgument("classical_double_layer: size mismatch");
  const int m = static_cast<int>(targets.size());
  auto one = [&](int k) {
    double sum = 0.0;
    for (int j = 0; j < nodes.count; ++j) {
      const Vec2 d = targets[k] - nodes.point[j];
      sum += dot(nodes.normal[j], d) / norm2(d) * density[j] * nodes.sigma[j];
    }
    out[k] = -sum * nodes.step / kTwoPi;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < m; ++k) one(k);
  } else {
    for (int k = 0; k < m; ++k) one(k);
  }
}

std::vector<double> classical_double_layer_trace(const BoundaryNodes& nodes, std::span<const double> density) {
  std::vector<double> out(nodes.count, 0.0);
  for (int i = 0; i < nodes.count; ++i) {
    double sum = 0.0;
    for (int j = 0; j < nodes.count; ++j) sum += classical_entry(nodes, i, j) * density[j];
    out[i] = sum * nodes.step;
  }
  return out;
}

}  // namespace perfo
