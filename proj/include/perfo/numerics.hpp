#pragma once

#include <span>
#include <vector>

namespace perfo {

/// Least-squares polynomial coefficients c_0..c_degree (ascending powers).
std::vector<double> polyfit(std::span<const double> x, std::span<const double> y, int degree);
double polyval(std::span<const double> coeffs, double x);
/// Max |y_i - p(x_i)| of a fit.
double fit_residual(std::span<const double> coeffs, std::span<const double> x, std::span<const double> y);

}  // namespace perfo
