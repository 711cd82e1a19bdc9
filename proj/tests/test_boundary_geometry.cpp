#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "perfo/boundary_geometry.hpp"
#include "perfo/errors.hpp"
#include "perfo/oracles.hpp"

using namespace perfo;
using std::numbers::pi;

TEST_CASE("circle kinematics") {
  const BoundaryShape c = BoundaryShape::circle(2.0, {0.5, -1.0});
  for (double t : {0.0, 0.7, 2.5, 5.9}) {
    const ShapeKinematics k = c.kinematics(t);
    CHECK(k.point.x == doctest::Approx(0.5 + 2.0 * std::cos(t)));
    CHECK(k.point.y == doctest::Approx(-1.0 + 2.0 * std::sin(t)));
    CHECK(k.outward_normal.x == doctest::Approx(std::cos(t)));
    CHECK(k.outward_normal.y == doctest::Approx(std::sin(t)));
    CHECK(k.sigma_tilde == doctest::Approx(2.0));
    CHECK(k.curvature == doctest::Approx(0.5));
  }
  CHECK(c.area() == doctest::Approx(4.0 * pi).epsilon(1e-12));
  CHECK(c.length() == doctest::Approx(4.0 * pi).epsilon(1e-12));
}

TEST_CASE("ellipse geometry") {
  const BoundaryShape e = BoundaryShape::ellipse(1.0, 0.6);
  CHECK(e.area() == doctest::Approx(pi * 0.6).epsilon(1e-12));
  CHECK(e.length() == doctest::Approx(oracle::adaptive_length(e)).epsilon(1e-12));
  // curvature at the end of the major axis is a / b^2
  CHECK(e.kinematics(0.0).curvature == doctest::Approx(1.0 / 0.36));
  const BoundaryNodes nodes = e.sample(128);
  std::vector<double> ones(128, 1.0);
  CHECK(nodes.integrate(ones) == doctest::Approx(oracle::adaptive_length(e)).epsilon(1e-12));
}

TEST_CASE("radial perturbation matches its polar form") {
  const std::vector<int> modes{2, 3, 5};
  const std::vector<double> amps{0.1, 0.05, 0.03};
  const std::vector<double> phases{0.3, 1.1, 2.0};
  const BoundaryShape s = BoundaryShape::radial_perturbation(modes, amps, phases);
  for (double t = 0.0; t < 2 * pi; t += 0.37) {
    double r = 1.0;
    for (std::size_t i = 0; i < modes.size(); ++i) r += amps[i] * std::cos(modes[i] * t + phases[i]);
    const Vec2 x = s.point(t);
    CHECK(std::abs(x.x - r * std::cos(t)) < 1e-14);
    CHECK(std::abs(x.y - r * std::sin(t)) < 1e-14);
  }
  CHECK(s.length() == doctest::Approx(oracle::adaptive_length(s)).epsilon(1e-12));
}

TEST_CASE("derivatives against finite differences") {
  const std::vector<double> flat{0.1, -0.2, 1.0, 0.1, 0.05, 0.8, 0.05, -0.02, 0.03, 0.04};
  const BoundaryShape s = BoundaryShape::from_coefficients(flat);
  const double h = 1e-6;
  for (double t : {0.2, 1.9, 4.4}) {
    const Vec2 d = (s.point(t + h) - s.point(t - h)) * (0.5 / h);
    CHECK(norm(d - s.derivative(t)) < 1e-8);
    const Vec2 dd = (s.derivative(t + h) - s.derivative(t - h)) * (0.5 / h);
    CHECK(norm(dd - s.second_derivative(t)) < 1e-8);
  }
  const std::vector<double> back = s.coefficients();
  REQUIRE(back.size() == flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) CHECK(back[i] == flat[i]);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(BoundaryShape::from_coefficients(std::vector<double>{0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(BoundaryShape::from_coefficients(std::vector<double>{0, 0, 1, 0, 0, NAN}), InvalidArgument);
  // clockwise circle
  CHECK_THROWS_AS(BoundaryShape::from_coefficients(std::vector<double>{0, 0, 1, 0, 0, -1}), InvalidArgument);
  // segment traversed back and forth: not regular
  CHECK_THROWS_AS(BoundaryShape::from_coefficients(std::vector<double>{0, 0, 1, 0, 0, 0}), InvalidArgument);
  // figure eight: x = sin t, y = sin 2t / 2
  CHECK_THROWS_AS(BoundaryShape::from_coefficients(std::vector<double>{0, 0, 0, 1, 0, 0, 0, 0, 0, 0.5}),
                  InvalidArgument);
  // limacon with an inner loop: r = 0.3 + cos t
  const std::vector<int> modes{1};
  const std::vector<double> amp{1.4};
  const std::vector<double> ph{0.0};
  CHECK_THROWS_AS(BoundaryShape::radial_perturbation(modes, amp, ph), InvalidArgument);
  CHECK_THROWS_AS(BoundaryShape::circle(-1.0), InvalidArgument);
}

TEST_CASE("shift reparametrizes the same curve") {
  const BoundaryShape e = BoundaryShape::ellipse(1.0, 0.5);
  const BoundaryShape s = e.shifted(0.4);
  for (double t : {0.0, 1.0, 3.0}) CHECK(norm(s.point(t) - e.point(t + 0.4)) < 1e-14);
}

TEST_CASE("sampled nodes") {
  const BoundaryNodes nodes = BoundaryShape::circle().sample(64);
  CHECK(nodes.count == 64);
  CHECK(nodes.step == doctest::Approx(2 * pi / 64));
  CHECK(nodes.angle[16] == doctest::Approx(pi / 2));
  CHECK(nodes.max_spacing() == doctest::Approx(2 * pi / 64));
  CHECK_THROWS_AS(BoundaryShape::circle().sample(4), InvalidArgument);
}

TEST_CASE("hole containment") {
  const Lattice lattice(1.0, 1.0);
  const BoundaryShape c = BoundaryShape::circle();
  CHECK(hole_containment_check(lattice, {0.5, 0.5}, 0.0, c));
  CHECK(hole_containment_check(lattice, {0.5, 0.5}, 0.49, c));
  CHECK_FALSE(hole_containment_check(lattice, {0.5, 0.5}, 0.5, c));
  CHECK(hole_containment_check(lattice, {0.2, 0.5}, 0.19, c));
  CHECK_FALSE(hole_containment_check(lattice, {0.2, 0.5}, 0.21, c));
  // negative eps reflects the hole through p
  const BoundaryShape shifted = BoundaryShape::circle(0.5, {0.6, 0.0});
  CHECK(hole_containment_check(lattice, {0.3, 0.5}, 0.3, shifted));
  CHECK_FALSE(hole_containment_check(lattice, {0.3, 0.5}, -0.3, shifted));
}
