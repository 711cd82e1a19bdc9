#include "perfo/oracles.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "perfo/errors.hpp"

namespace perfo::oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailExponent = 40.0;  // exp(-40) ~ 4e-18

// -(1/|Q|) sum_{k != 0} exp(-delta |xi|^2) / (4 pi^2 |xi|^2) cos(2 pi xi . x), summed over a half plane.
double regularized_sum(const Lattice& lattice, const Vec2& x, double delta) {
  const double xi_max = std::sqrt(kTailExponent / delta);
  const int k1_max = static_cast<int>(std::ceil(xi_max * lattice.q11()));
  const int k2_max = static_cast<int>(std::ceil(xi_max * lattice.q22()));
  double sum = 0.0;
  for (int k1 = 0; k1 <= k1_max; ++k1) {
    const double xi1 = k1 / lattice.q11();
    double row = 0.0;
    for (int k2 = (k1 == 0 ? 1 : -k2_max); k2 <= k2_max; ++k2) {
      const double xi2 = k2 / lattice.q22();
      const double xi_sq = xi1 * xi1 + xi2 * xi2;
      if (xi_sq > xi_max * xi_max) continue;
      row += std::exp(-delta * xi_sq) / xi_sq * std::cos(2.0 * kPi * (xi1 * x.x + xi2 * x.y));
    }
    sum += row;
  }
  return -2.0 * sum / (4.0 * kPi * kPi * lattice.cell_measure());
}

}  // namespace

double fourier_green(const Lattice& lattice, const Vec2& x, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("fourier_green: delta must be positive");
  const double d = lattice.distance_to_lattice(x);
  if (kPi * kPi * d * d / delta < 37.0)
    throw InvalidArgument("fourier_green: point too close to the lattice for this delta");
  return regularized_sum(lattice, x, delta) + delta / (4.0 * kPi * kPi * lattice.cell_measure());
}

double fourier_remainder_origin(const Lattice& lattice, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("fourier_remainder_origin: delta must be positive");
  return regularized_sum(lattice, {0.0, 0.0}, delta) -
         (std::log(delta / (kPi * kPi)) - std::numbers::egamma) / (4.0 * kPi) +
         delta / (4.0 * kPi * kPi * lattice.cell_measure());
}

double classical_green_box_integral(double a, double b) {
  // int_0^a int_0^b log(x^2 + y^2) dy dx, four quadrants, times 1/(4 pi).
  const double quadrant = a * b * (std::log(a * a + b * b) - 3.0) + a * a * std::atan(b / a) + b * b * std::atan(a / b);
  return quadrant / kPi;
}

double green_cell_mean(const LatticeGreen& green) {
  using boost::math::quadrature::gauss;
  const Lattice& lattice = green.lattice();
  const double a = 0.5 * lattice.q11();
  const double b = 0.5 * lattice.q22();
  auto smooth = [&](double x) {
    return gauss<double, 60>::integrate([&](double y) { return green.remainder({x, y}); }, -b, b);
  };
  const double remainder = gauss<double, 60>::integrate(smooth, -a, a);
  return (remainder + classical_green_box_integral(a, b)) / lattice.cell_measure();
}

double adaptive_double_layer(const BoundaryShape& shape, const std::function<double(double)>& theta, const Vec2& x,
                             double tolerance) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double t) {
    const ShapeKinematics k = shape.kinematics(t);
    const Vec2 d = x - k.point;
    return -dot(k.outward_normal, d) / (2.0 * kPi * norm2(d)) * theta(t) * k.sigma_tilde;
  };
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, 2.0 * kPi, 15, tolerance);
}

double adaptive_length(const BoundaryShape& shape) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate([&](double t) { return norm(shape.derivative(t)); }, 0.0, 2.0 * kPi,
                                              15, 1e-15);
}

}  // namespace perfo::oracle
