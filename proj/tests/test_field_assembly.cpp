#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "perfo/errors.hpp"
#include "perfo/field_assembly.hpp"

using namespace perfo;
using std::numbers::pi;

namespace {

const Lattice kUnit(1.0, 1.0);

ProblemData problem(double eps) {
  const std::vector<FourierMode> modes{{0, 0, 2.5}, {1, 1, 0.3}, {2, 0, {0.0, 0.1}}};
  const std::vector<int> m{3};
  const std::vector<double> a{0.1};
  const std::vector<double> ph{0.5};
  return {eps, {0.5, 0.5}, BoundaryShape::radial_perturbation(m, a, ph),
          trig_boundary_data({0.2, 0.3, 0.0, -0.1, 0.05}), PeriodicField::from_modes(kUnit, modes), 128};
}

}  // namespace

TEST_CASE("u and ufrak differ by the log term") {
  const ProblemData data = problem(0.02);
  const DensitySolution d = solve_density(data);
  const FieldSample s = eval_u(data, d, {0.2, 0.3});
  CHECK(s.parts.log_term == doctest::Approx(std::log(0.02) / (2 * pi) * 2.5).epsilon(1e-14));
  CHECK(std::abs(s.u - (s.ufrak + s.parts.log_term)) < 1e-15);
  CHECK(std::abs(s.ufrak - eval_ufrak(data, d, {0.2, 0.3})) < 1e-12);
  CHECK(s.parts.constant == d.constant);
  CHECK(std::abs(s.parts.double_layer) > 0.0);
}

TEST_CASE("admissibility of evaluation points") {
  const ProblemData data = problem(0.05);
  const DensitySolution d = solve_density(data);
  const FieldEvaluator ev(data, d);
  CHECK_THROWS_AS(ev.sample({0.5, 0.5}), SingularPoint);
  CHECK_THROWS_AS(ev.sample({1.5, -0.5}), SingularPoint);  // hole of a neighbouring cell
  const Vec2 on_curve = data.p + 0.05 * data.shape.point(0.3);
  CHECK_THROWS_AS(ev.sample(on_curve), SingularPoint);
  CHECK_THROWS_AS(ev.sample({NAN, 0.1}), InvalidArgument);
  const Vec2 near = data.p + 0.05 * (data.shape.point(0.3) + 0.5 * data.shape.kinematics(0.3).outward_normal);
  const EvaluationSet set = ev.admit(std::vector<Vec2>{near, {0.1, 0.1}});
  CHECK(set.clearance[0] == doctest::Approx(0.025).epsilon(0.05));
  CHECK(set.clearance[1] > 0.4);
  CHECK(ev.guard_distance() > 0.0);
}

TEST_CASE("eval_u needs a positive eps") {
  const ProblemData data = problem(0.0);
  const DensitySolution d = solve_limit(data.shape, data.g, data.f, data.p, data.n);
  CHECK_THROWS_AS(eval_u(data, d, {0.2, 0.2}), InvalidArgument);
  // ufrak at eps = 0 is c~ + P_q[f] - S_q(x - p) int f
  const CorrectedPotential u(data.f, data.p);
  CHECK(eval_ufrak(data, d, {0.2, 0.2}) == doctest::Approx(d.constant + u({0.2, 0.2})).epsilon(1e-14));
}

TEST_CASE("density from another eps is rejected") {
  const DensitySolution d = solve_density(problem(0.02));
  CHECK_THROWS_AS(FieldEvaluator(problem(0.03), d), InvalidArgument);
}

TEST_CASE("field is q-periodic and point-parallel evaluation is deterministic") {
  const ProblemData data = problem(0.03);
  const DensitySolution d = solve_density(data);
  const FieldEvaluator ev(data, d);
  std::vector<Vec2> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({0.05 + 0.07 * i, 0.9 - 0.06 * i});
  const auto serial = ev.sample(pts, Execution::serial);
  const auto parallel = ev.sample(pts, Execution::parallel);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(serial[k].u == parallel[k].u);
    CHECK(std::abs(ev.sample(pts[k] + Vec2{-1.0, 2.0}).u - serial[k].u) < 1e-11);
  }
}

TEST_CASE("limiting field") {
  const BoundaryShape e = BoundaryShape::ellipse(1.0, 0.7);
  const PeriodicField zero = PeriodicField::from_modes(kUnit, std::vector<FourierMode>{});
  const DensitySolution constant = solve_limit(e, constant_boundary_data(0.8), zero, {0.5, 0.5}, 64);
  CHECK(eval_limit_field(e, constant, {3.0, 1.0}) == doctest::Approx(0.8).epsilon(1e-13));
  CHECK_THROWS_AS(eval_limit_field(e, constant, {0.1, 0.1}), SingularPoint);
  CHECK_THROWS_AS(eval_limit_field(e, solve_density(problem(0.02)), {3.0, 1.0}), InvalidArgument);
}

TEST_CASE("inside_polygon") {
  const BoundaryNodes sq = BoundaryShape::circle().sample(64);
  CHECK(inside_polygon(sq, {0.0, 0.0}));
  CHECK(inside_polygon(sq, {0.99, 0.0}));
  CHECK_FALSE(inside_polygon(sq, {1.01, 0.0}));
  CHECK_FALSE(inside_polygon(sq, {5.0, 5.0}));
}
