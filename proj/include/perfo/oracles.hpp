#pragma once

#include <functional>

#include "perfo/boundary_geometry.hpp"
#include "perfo/lattice_green.hpp"

// Independent reference computations used by the tests and the acceptance
// suite. None of them shares code with the production evaluators beyond the
// geometry types.

namespace perfo::oracle {

/// S_q(x) from the Gaussian-regularized Fourier series
///   S_delta(x) = -(1/|Q|) sum_{k != 0} exp(-delta |xi_k|^2) / (4 pi^2 |xi_k|^2) cos(2 pi xi_k . x)
/// using S_q = S_delta + delta / (4 pi^2 |Q|), which holds up to
/// exp(-pi^2 d^2 / delta) at distance d from the lattice. Throws
/// InvalidArgument when x is too close to the lattice for that bound to be
/// below 1e-16.
double fourier_green(const Lattice& lattice, const Vec2& x, double delta = 0.002);

/// R_q(0) = S_delta(0) - (log(delta / pi^2) - gamma) / (4 pi) + delta / (4 pi^2 |Q|).
double fourier_remainder_origin(const Lattice& lattice, double delta = 0.002);

/// int over ]-a, a[ x ]-b, b[ of S_2, in closed form.
double classical_green_box_integral(double a, double b);

/// Cell mean of S_q: Gauss-Legendre for the smooth R_q on the centered cell
/// plus the exact log integral.
double green_cell_mean(const LatticeGreen& green);

/// Classical double layer -int nu . DS_2(x - phi(s)) theta(s) sigma(s) ds by
/// adaptive Gauss-Kronrod in s.
double adaptive_double_layer(const BoundaryShape& shape, const std::function<double(double)>& theta, const Vec2& x,
                             double tolerance = 1e-12);

/// Curve length by adaptive Gauss-Kronrod.
double adaptive_length(const BoundaryShape& shape);

}  // namespace perfo::oracle
