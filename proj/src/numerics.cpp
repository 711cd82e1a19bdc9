#include "perfo/numerics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "perfo/errors.hpp"

namespace perfo {

std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree) {
  if (x.size() != y.size()) throw InvalidArgument("polyfit: x and y differ in length");
  if (degree < 0 || x.size() < static_cast<std::size_t>(degree + 1))
    throw InvalidArgument("polyfit: not enough points for the requested degree");
  const Eigen::Index m = static_cast<Eigen::Index>(x.size());
  // Columns scaled by max|x|^k to keep the Vandermonde matrix well conditioned.
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  Eigen::MatrixXd a(m, degree + 1);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = x[i] / scale;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      a(i, k) = p;
      p *= t;
    }
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(degree + 1);
  double s = 1.0;
  for (int k = 0; k <= degree; ++k) {
    out[k] = c(k) / s;
    s *= scale;
  }
  return out;
}

double polyval(std::span<const double> coeffs, double x) {
  double r = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
  return r;
}

double fit_residual(std::span<const double> coeffs, std::span<const double> x, std::span<const double> y) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(y[i] - polyval(coeffs, x[i])));
  return r;
}

}  // namespace perfo
