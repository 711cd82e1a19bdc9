#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "perfo/errors.hpp"
#include "perfo/lattice_green.hpp"
#include "perfo/oracles.hpp"

using namespace perfo;
using std::numbers::pi;

TEST_CASE("lattice validation and reduction") {
  CHECK_THROWS_AS(Lattice(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Lattice(1.0, -2.0), InvalidArgument);
  CHECK_THROWS_AS(Lattice(1.0, NAN), InvalidArgument);

  const Lattice lattice(2.0, 0.5);
  CHECK(lattice.cell_measure() == doctest::Approx(1.0));
  CHECK(lattice.ewald_split() == doctest::Approx(std::sqrt(pi) / 2.0));
  const Vec2 r = lattice.reduce({4.3, -0.9});
  CHECK(r.x == doctest::Approx(0.3));
  CHECK(r.y == doctest::Approx(0.1));
  CHECK(lattice.distance_to_lattice({2.0, 0.5}) == doctest::Approx(0.0));
  CHECK(lattice.contains({1.0, 0.25}));
  CHECK_FALSE(lattice.contains({0.0, 0.25}));
  CHECK_FALSE(lattice.contains({1.0, 0.5}));
}

TEST_CASE("classical fundamental solution") {
  CHECK(classical_green({1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(classical_green({std::exp(1.0), 0.0}) == doctest::Approx(1.0 / (2.0 * pi)));
  const Vec2 g = classical_green_gradient({3.0, 4.0});
  CHECK(g.x == doctest::Approx(3.0 / (50.0 * pi)));
  CHECK(g.y == doctest::Approx(4.0 / (50.0 * pi)));
}

TEST_CASE("S_q is periodic, even and matches the Fourier oracle") {
  for (const Lattice& lattice : {Lattice(1.0, 1.0), Lattice(1.0, 0.7), Lattice(2.0, 0.5)}) {
    const LatticeGreen green(lattice);
    const Vec2 x{0.31 * lattice.q11(), 0.62 * lattice.q22()};
    const double s = green.periodic(x);
    CHECK(std::abs(green.periodic(x + Vec2{lattice.q11(), 0.0}) - s) < 1e-13);
    CHECK(std::abs(green.periodic(x + Vec2{-2 * lattice.q11(), 3 * lattice.q22()}) - s) < 1e-13);
    CHECK(std::abs(green.periodic(-x) - s) < 1e-14);
    CHECK(std::abs(s - oracle::fourier_green(lattice, x)) < 1e-12);
  }
}

TEST_CASE("gradient of S_q against central differences") {
  const LatticeGreen green(Lattice(1.0, 0.8));
  const double h = 1e-5;
  for (const Vec2 x : {Vec2{0.2, 0.1}, Vec2{0.7, 0.45}, Vec2{-0.05, 0.3}}) {
    const GreenValue both = green.periodic_both(x);
    CHECK(both.value == doctest::Approx(green.periodic(x)).epsilon(1e-14));
    const double dx = (green.periodic(x + Vec2{h, 0}) - green.periodic(x - Vec2{h, 0})) / (2 * h);
    const double dy = (green.periodic(x + Vec2{0, h}) - green.periodic(x - Vec2{0, h})) / (2 * h);
    CHECK(std::abs(both.gradient.x - dx) < 1e-8);
    CHECK(std::abs(both.gradient.y - dy) < 1e-8);
    const Vec2 g = green.periodic_gradient(x);
    CHECK(std::abs(g.x - both.gradient.x) < 1e-15);
  }
}

TEST_CASE("Laplacian of S_q is -1/|Q| away from the lattice") {
  const Lattice lattice(1.0, 0.8);
  const LatticeGreen green(lattice);
  const double h = 1e-3;
  const Vec2 x{0.4, 0.3};
  const double lap = (green.periodic(x + Vec2{h, 0}) + green.periodic(x - Vec2{h, 0}) + green.periodic(x + Vec2{0, h}) +
                      green.periodic(x - Vec2{0, h}) - 4 * green.periodic(x)) /
                     (h * h);
  CHECK(lap == doctest::Approx(-1.0 / lattice.cell_measure()).epsilon(1e-5));
}

TEST_CASE("remainder is smooth at the origin") {
  const LatticeGreen green(Lattice(1.0, 1.0));
  const double r0 = green.remainder({0.0, 0.0});
  CHECK(std::abs(r0 - oracle::fourier_remainder_origin(green.lattice())) < 1e-12);
  CHECK(std::abs(green.remainder({1e-4, 0.0}) - r0) < 1e-8);
  CHECK(norm(green.remainder_gradient({0.0, 0.0})) < 1e-15);
  const Vec2 x{0.3, 0.2};
  CHECK(std::abs(green.remainder(x) - (green.periodic(x) - classical_green(x))) < 1e-14);
  const Vec2 dr = green.remainder_gradient(x);
  const Vec2 expected = green.periodic_gradient(x) - classical_green_gradient(x);
  CHECK(std::abs(dr.x - expected.x) < 1e-13);
  CHECK(std::abs(dr.y - expected.y) < 1e-13);
  // S_q is even in each coordinate, so DS_q vanishes at the half-period point
  CHECK(norm(green.periodic_gradient({0.5, 0.5})) < 1e-14);
}

TEST_CASE("singular points are rejected") {
  const LatticeGreen green(Lattice(1.0, 1.0));
  CHECK_THROWS_AS(green.periodic({0.0, 0.0}), SingularPoint);
  CHECK_THROWS_AS(green.periodic({1.0, -2.0}), SingularPoint);
  CHECK_THROWS_AS(green.periodic_gradient({1.0, 1.0}), SingularPoint);
  CHECK_THROWS_AS(green.remainder({1.0, 0.0}), SingularPoint);
  CHECK_NOTHROW(green.remainder({0.0, 0.0}));
}

TEST_CASE("Ewald split independence and zero cell mean") {
  for (const Lattice& lattice : {Lattice(1.0, 1.0), Lattice(1.5, 0.6)}) {
    const LatticeGreen a(lattice);
    const LatticeGreen b(lattice.with_split(2.0 * lattice.ewald_split()));
    const LatticeGreen c(lattice.with_split(0.6 * lattice.ewald_split()));
    for (const Vec2 x : {Vec2{0.11, 0.23}, Vec2{0.5, 0.5}, Vec2{0.9, 0.05}}) {
      CHECK(std::abs(a.periodic(x) - b.periodic(x)) < 1e-13);
      CHECK(std::abs(a.periodic(x) - c.periodic(x)) < 1e-13);
    }
    CHECK(std::abs(oracle::green_cell_mean(a)) < 1e-12);
  }
}

TEST_CASE("closed-form log integral over a box") {
  using boost::math::quadrature::gauss_kronrod;
  const double a = 0.5, b = 0.35;
  auto inner = [&](double x) {
    return gauss_kronrod<double, 31>::integrate([&](double y) { return std::log(x * x + y * y); }, 0.0, b, 15, 1e-13);
  };
  const double quadrant = gauss_kronrod<double, 31>::integrate(inner, 0.0, a, 15, 1e-12);
  CHECK(oracle::classical_green_box_integral(a, b) == doctest::Approx(quadrant / pi).epsilon(1e-10));
}

TEST_CASE("oracle guards its own validity region") {
  const Lattice lattice(1.0, 1.0);
  CHECK_THROWS_AS(oracle::fourier_green(lattice, {0.01, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(oracle::fourier_green(lattice, {0.3, 0.3}, 0.0), InvalidArgument);
}
