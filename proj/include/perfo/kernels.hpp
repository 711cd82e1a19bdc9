#pragma once

#include <Eigen/Dense>
#include <span>

#include "perfo/boundary_geometry.hpp"
#include "perfo/lattice_green.hpp"
#include "perfo/vec2.hpp"

namespace perfo {

/// Serial kernels are the reference implementation; parallel ones split the
/// outer (row / target) loop across OpenMP threads and produce bit-identical
/// results since no reduction crosses that loop.
enum class Execution { serial, parallel };

/// (N+1) x (N+1) Nystrom matrix of the rescaled system at parameter eps:
///
///   rows 0..N-1:  -theta_i/2 + h sum_j K(t_i, t_j) theta_j
///                 - eps h sum_j nu_j . DR_q(eps (phi_i - phi_j)) sigma_j theta_j + c
///   row N:        h sum_j sigma_j theta_j
///
/// with K(t, s) = -nu(s) . DS_2(phi(t) - phi(s)) sigma(s) and the curvature
/// limit K(t, t) = kappa(t) sigma(t) / (4 pi) on the diagonal. The DR_q block
/// is skipped when eps == 0.
Eigen::MatrixXd assemble_rescaled_matrix(const BoundaryNodes& nodes, const LatticeGreen& green, double eps,
                                         Execution exec = Execution::parallel);

/// Bordered adjoint matrix: -tau_i/2 + h sum_j nu_i . DS_2(phi_i - phi_j) sigma_j tau_j,
/// with a column of ones and the normalization row h sigma_j.
Eigen::MatrixXd assemble_adjoint_matrix(const BoundaryNodes& nodes, Execution exec = Execution::parallel);

/// Periodic double layer of a hole p + eps phi:
///   out_k = -eps h sum_j nu_j . DS_q(x_k - p - eps phi_j) density_j sigma_j.
void periodic_double_layer(const BoundaryNodes& nodes, std::span<const double> density, const LatticeGreen& green,
                           const Vec2& p, double eps, std::span<const Vec2> targets, std::span<double> out,
                           Execution exec = Execution::parallel);

/// Classical double layer at off-curve targets:
///   out_k = -h sum_j nu_j . DS_2(x_k - phi_j) density_j sigma_j.
void classical_double_layer(const BoundaryNodes& nodes, std::span<const double> density,
                            std::span<const Vec2> targets, std::span<double> out,
                            Execution exec = Execution::parallel);

/// Boundary trace of the classical double layer at the nodes (principal value
/// via the Nystrom rule with the curvature diagonal).
std::vector<double> classical_double_layer_trace(const BoundaryNodes& nodes, std::span<const double> density);

}  // namespace perfo
