#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "perfo/bie_solver.hpp"
#include "perfo/errors.hpp"

using namespace perfo;
using std::numbers::pi;

namespace {

const Lattice kUnit(1.0, 1.0);

BoundaryShape wobbly() {
  const std::vector<int> modes{2, 3};
  const std::vector<double> amps{0.12, -0.05};
  const std::vector<double> phases{0.4, 1.0};
  return BoundaryShape::radial_perturbation(modes, amps, phases);
}

PeriodicField source() {
  const std::vector<FourierMode> modes{{0, 0, 1.3}, {1, 0, 0.2}, {0, 1, {0.0, -0.15}}};
  return PeriodicField::from_modes(kUnit, modes);
}

ProblemData generic(double eps, int n = 128) {
  return {eps, {0.45, 0.55}, wobbly(), trig_boundary_data({0.3, 0.5, -0.2, 0.1, 0.25}), source(), n};
}

}  // namespace

TEST_CASE("trigonometric boundary data") {
  const BoundaryData g = trig_boundary_data({1.0, 0.5, -0.25, 0.0, 2.0});
  CHECK(g(0.3) == doctest::Approx(1.0 + 0.5 * std::cos(0.3) - 0.25 * std::sin(0.3) + 2.0 * std::sin(0.6)));
  CHECK_THROWS_AS(trig_boundary_data({1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(trig_boundary_data({}), InvalidArgument);
  CHECK(constant_boundary_data(3.5)(1.0) == 3.5);
}

TEST_CASE("rows of the limiting block sum to zero") {
  // The classical double layer of density 1 has boundary value 1/2, which cancels -1/2.
  for (const BoundaryShape& s : {BoundaryShape::circle(), wobbly(), BoundaryShape::ellipse(1.0, 0.5)}) {
    const BoundaryNodes nodes = s.sample(128);
    const Eigen::MatrixXd a = assemble_rescaled_matrix(nodes, LatticeGreen(kUnit), 0.0);
    const Eigen::VectorXd rows = a.topLeftCorner(128, 128).rowwise().sum();
    CHECK(rows.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("serial and parallel assembly are bit-identical") {
  const BoundaryNodes nodes = wobbly().sample(64);
  const LatticeGreen green(kUnit);
  const Eigen::MatrixXd s = assemble_rescaled_matrix(nodes, green, 0.03, Execution::serial);
  const Eigen::MatrixXd p = assemble_rescaled_matrix(nodes, green, 0.03, Execution::parallel);
  CHECK((s.array() == p.array()).all());
  const Eigen::MatrixXd as = assemble_adjoint_matrix(nodes, Execution::serial);
  const Eigen::MatrixXd ap = assemble_adjoint_matrix(nodes, Execution::parallel);
  CHECK((as.array() == ap.array()).all());
}

TEST_CASE("constant data give theta = 0 and c = g0") {
  const PeriodicField zero = PeriodicField::from_modes(kUnit, std::vector<FourierMode>{});
  for (double eps : {-0.01, 0.001, 0.05}) {
    const ProblemData data{eps, {0.5, 0.5}, wobbly(), constant_boundary_data(-2.25), zero, 128};
    const DensitySolution d = solve_density(data);
    CHECK(d.kind == DensityKind::rescaled);
    CHECK(d.constant == doctest::Approx(-2.25).epsilon(1e-14));
    for (double t : d.theta) CHECK(std::abs(t) < 1e-12);
  }
}

TEST_CASE("rescaled solve: residual, constraint and conditioning are reported") {
  const DensitySolution d = solve_density(generic(0.02));
  CHECK(d.n == 128);
  CHECK(d.theta.size() == 128);
  CHECK(d.residual < 1e-13);
  CHECK(std::abs(d.constraint) < 1e-13);
  CHECK(d.condition > 1.0);
  CHECK(d.condition < 1e6);
  CHECK(to_string(d.kind) == "rescaled");
}

TEST_CASE("containment violations name the condition") {
  try {
    solve_density(generic(0.4));
    FAIL("expected ContainmentError");
  } catch (const ContainmentError& e) {
    CHECK(std::string(e.what()).find("p + eps * closure(I[phi])") != std::string::npos);
  }
  ProblemData outside = generic(0.01);
  outside.p = {1.2, 0.5};
  CHECK_THROWS_AS(solve_density(outside), ContainmentError);
  ProblemData few = generic(0.01);
  few.n = 4;
  CHECK_THROWS_AS(solve_density(few), InvalidArgument);
}

TEST_CASE("adjoint density") {
  const DensitySolution circle = adjoint_density(BoundaryShape::circle(), 64);
  for (double t : circle.theta) CHECK(t == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-13));
  CHECK(to_string(circle.kind) == "adjoint");
  // for the ellipse (a cos t, b sin t) the equilibrium density is 1 / (2 pi sigma)
  const BoundaryShape e = BoundaryShape::ellipse(1.0, 0.4);
  const DensitySolution tau = adjoint_density(e, 128);
  const BoundaryNodes nodes = e.sample(128);
  for (int j = 0; j < 128; ++j) CHECK(tau.theta[j] == doctest::Approx(1.0 / (2 * pi * nodes.sigma[j])).epsilon(1e-11));
  CHECK(tau.constraint == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("the limiting constant from the adjoint pairing equals the one of the limiting system") {
  const ProblemData data = generic(0.0);
  const DensitySolution limit = solve_limit(data.shape, data.g, data.f, data.p, data.n);
  CHECK(limit.kind == DensityKind::limiting);
  CHECK(limit_constant(data.shape, data.g, data.f, data.p, data.n) == doctest::Approx(limit.constant).epsilon(1e-12));
  // eps = 0 through solve_density gives the same pair
  const DensitySolution direct = solve_density(data);
  CHECK(direct.constant == doctest::Approx(limit.constant).epsilon(1e-14));
}

TEST_CASE("limiting datum carries P_q[f](p) and R_q(0)") {
  const BoundaryShape circle = BoundaryShape::circle();
  const PeriodicField f = source();
  const Vec2 p{0.45, 0.55};
  const std::vector<double> datum = limiting_datum(circle, constant_boundary_data(0.0), f, p, 16);
  const double expected = -newtonian(f)(p) + LatticeGreen(kUnit).remainder({0.0, 0.0}) * cell_integral(f).value;
  for (double v : datum) CHECK(v == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("negative eps is admissible") {
  const DensitySolution minus = solve_density(generic(-0.01));
  const DensitySolution plus = solve_density(generic(0.01));
  CHECK(std::abs(minus.constant - plus.constant) > 1e-6);
  CHECK(minus.residual < 1e-13);
}
