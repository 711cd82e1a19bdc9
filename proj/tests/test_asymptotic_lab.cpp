#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "perfo/asymptotic_lab.hpp"
#include "perfo/errors.hpp"

using namespace perfo;
using std::numbers::pi;

namespace {

const Lattice kUnit(1.0, 1.0);

ProblemData circle_problem(double intf) {
  return {0.01, {0.5, 0.5}, BoundaryShape::circle(), constant_boundary_data(0.0),
          PeriodicField::constant(kUnit, intf), 128};
}

}  // namespace

TEST_CASE("geometric grid") {
  const std::vector<double> g = geometric_grid(1e-2, 1e-3, 8);
  REQUIRE(g.size() == 8);
  CHECK(g.front() == 1e-2);
  CHECK(g.back() == 1e-3);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] / g[i] == doctest::Approx(g[0] / g[1]));
  CHECK(default_eps_grid() == g);
  CHECK_THROWS_AS(geometric_grid(1e-3, 1e-2, 4), InvalidArgument);
}

TEST_CASE("log fits") {
  std::vector<double> eps{1e-2, 5e-3, 2e-3, 1e-3};
  std::vector<double> v;
  for (double e : eps) v.push_back(3.0 + 0.5 * std::log(e));
  const LogFit fit = fit_log_slope(eps, v);
  CHECK(fit.a == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.b == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK_THROWS_AS(fit_log_slope(std::vector<double>{1e-2, 1e-3, 1e-4}, std::vector<double>{1, 2, 3}), InvalidArgument);
  v[1] += 0.1;
  CHECK_THROWS_AS(fit_log_slope(eps, v, 1e-3), NumericalError);
  CHECK_NOTHROW(fit_log_slope(eps, v, 1.0));
}

TEST_CASE("sweep input validation") {
  const ProblemData base = circle_problem(1.0);
  const std::vector<Vec2> probes{{0.1, 0.1}};
  CHECK_THROWS_AS(epsilon_sweep(base, std::vector<double>{1e-3, 1e-2}, probes), InvalidArgument);
  CHECK_THROWS_AS(epsilon_sweep(base, std::vector<double>{1e-2, -1e-3}, probes), InvalidArgument);
  try {
    epsilon_sweep(base, std::vector<double>{0.8, 0.6, 1e-2}, probes);
    FAIL("expected ContainmentError");
  } catch (const ContainmentError& e) {
    const std::string what = e.what();
    CHECK(what.find("0.8") != std::string::npos);
    CHECK(what.find("0.6") != std::string::npos);
  }
}

TEST_CASE("log slope equals int f / (2 pi) for the centered circle") {
  const ProblemData base = circle_problem(2.5);
  const std::vector<Vec2> probes{{0.1, 0.2}, {0.8, 0.3}};
  const SweepReport r = epsilon_sweep(base, geometric_grid(1e-2, 1e-3, 5), probes);
  REQUIRE(r.fits.size() == 2);
  for (const LogFit& f : r.fits) CHECK(f.b == doctest::Approx(2.5 / (2 * pi)).epsilon(1e-4));
  CHECK(r.entries.size() == 5);
  CHECK(r.entries[0].condition > 1.0);
}

TEST_CASE("continuation towards eps = 0") {
  const std::vector<int> m{2};
  const std::vector<double> a{0.1};
  const std::vector<double> ph{0.2};
  const ProblemData base{0.0, {0.45, 0.5}, BoundaryShape::radial_perturbation(m, a, ph),
                         trig_boundary_data({0.2, 0.1, 0.3}),
                         PeriodicField::from_modes(kUnit, std::vector<FourierMode>{{0, 0, 1.0}, {1, 0, 0.2}}), 96};
  const std::vector<double> grid{4e-3, 2e-3, -2e-3, -4e-3, 1e-3};
  const ContinuationReport r = continuation_check(base, grid);
  CHECK(r.c_error < 1e-8);
  CHECK(r.theta_error < 1e-7);
  CHECK_THROWS_AS(continuation_check(base, std::vector<double>{1e-3, 2e-3, 3e-3, 4e-3, 5e-3}), InvalidArgument);
  CHECK_THROWS_AS(continuation_check(base, std::vector<double>{1e-3, 0.0, -1e-3, -2e-3, 2e-3}), InvalidArgument);
}

TEST_CASE("ball limiting constants") {
  CHECK(sphere_limit_constant_3d(3, 1.0, 1.0) == doctest::Approx(-1.0 / (4 * pi)));
  CHECK(sphere_limit_constant_3d(3, 2.0, 3.0) == doctest::Approx(-3.0 / (8 * pi)));
  // the exterior capacity potential of the unit ball is r^(n-2) / |x|^(n-2)
  for (int n : {3, 4, 5}) CHECK(sphere_capacity_fd(n, 1.5, 4000) == doctest::Approx(std::pow(1.5, n - 2)).epsilon(1e-5));
  CHECK_THROWS_AS(sphere_limit_constant_3d(2, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("far field of the limiting solution") {
  const BoundaryShape e = BoundaryShape::ellipse(1.0, 0.6);
  const PeriodicField zero = PeriodicField::constant(kUnit, 0.0);
  const DensitySolution flat = solve_limit(e, constant_boundary_data(1.25), zero, {0.5, 0.5}, 128);
  CHECK(farfield_constant_2d(e, flat).value == doctest::Approx(1.25).epsilon(1e-13));
  const DensitySolution wavy = solve_limit(e, trig_boundary_data({0.3, 1.0, 0.0, 0.0, 0.5}), zero, {0.5, 0.5}, 128);
  const FarfieldEstimate far = farfield_constant_2d(e, wavy);
  CHECK(far.value == doctest::Approx(wavy.constant).epsilon(1e-9));
  CHECK(far.errors[2] < far.errors[0]);
}
