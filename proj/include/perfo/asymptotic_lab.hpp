#pragma once

#include <span>
#include <vector>

#include "perfo/bie_solver.hpp"
#include "perfo/field_assembly.hpp"

namespace perfo {

/// count points from hi down to lo, equally spaced in log.
std::vector<double> geometric_grid(double hi, double lo, int count);

/// Default fit window [1e-3, 1e-2] with 8 points.
std::vector<double> default_eps_grid();

struct SweepEntry {
  double eps = 0.0;
  double c_sharp = 0.0;
  double theta_inf_norm = 0.0;
  double condition = 0.0;
  double residual = 0.0;
  std::vector<FieldSample> probes;
};

/// u(x; eps) ~ a + b log eps; residual is the max absolute deviation.
struct LogFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

struct SweepReport {
  std::vector<double> eps_grid;
  std::vector<Vec2> probes;
  std::vector<SweepEntry> entries;  // same order as eps_grid
  std::vector<LogFit> fits;         // one per probe
};

/// Solves and evaluates at every eps of a strictly decreasing positive grid.
/// Containment and conditioning are checked for the whole grid before any
/// solve; failures list every offending eps.
SweepReport epsilon_sweep(const ProblemData& base, std::span<const double> eps_grid, std::span<const Vec2> probes,
                          double fit_tolerance = 1e-3);

/// Least squares line in log eps. Needs at least 4 points. Throws
/// NumericalError when the residual exceeds 10 * tolerance.
LogFit fit_log_slope(std::span<const double> eps, std::span<const double> values, double tolerance = 1e-3);
LogFit fit_log_slope(const SweepReport& report, int probe, double tolerance = 1e-3);

struct ContinuationReport {
  std::vector<double> eps_grid;
  std::vector<double> c_sharp;
  double c_extrapolated = 0.0;
  double c_limit = 0.0;
  std::vector<double> theta_extrapolated;
  std::vector<double> theta_limit;
  double c_error = 0.0;
  double theta_error = 0.0;         // max nodewise |extrapolated - limit|
  double extrapolation_residual = 0.0;  // max deviation of the cubic fits
  int degree = 3;
};

/// Fits c#(eps) and theta#(eps) nodewise by polynomials of degree <= 3 on a
/// grid of small nonzero eps of both signs and compares the value at eps = 0
/// with the limiting system. Throws NumericalError when the fit residual
/// exceeds smoothness_tolerance.
ContinuationReport continuation_check(const ProblemData& base, std::span<const double> eps_grid, int degree = 3,
                                      double smoothness_tolerance = 1e-6);

/// c~# of the n-dimensional ball of radius r: intf / ((2 - n) s_n r^(n-2)).
double sphere_limit_constant_3d(int n, double r, double intf);

/// lim |x|^(n-2) H_0(x) for the exterior of the ball of radius r from a
/// second order finite-difference solve in s = 1/|x|.
double sphere_capacity_fd(int n, double r, int cells = 2000);

struct FarfieldEstimate {
  double value = 0.0;
  std::vector<double> radii;
  std::vector<double> samples;
  std::vector<double> errors;  // |sample - value|
};

/// Evaluates the limiting field at radii 10, 100, 1000 along +-direction and
/// extrapolates the antipodal means to 1/|x| = 0 (they are even in 1/|x|).
/// samples/errors refer to the +direction values. Throws NumericalError when
/// the errors do not decrease with the radius.
FarfieldEstimate farfield_constant_2d(const BoundaryShape& shape, const DensitySolution& limit,
                                      Vec2 direction = {0.8, 0.6});

}  // namespace perfo
