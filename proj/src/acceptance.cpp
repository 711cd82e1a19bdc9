#include "perfo/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "perfo/asymptotic_lab.hpp"
#include "perfo/bie_solver.hpp"
#include "perfo/errors.hpp"
#include "perfo/field_assembly.hpp"
#include "perfo/numerics.hpp"
#include "perfo/oracles.hpp"

namespace perfo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kN = 256;

CheckResult upper(std::string name, double measured, double tolerance) {
  return {std::move(name), std::isfinite(measured) && measured <= tolerance, measured, tolerance, false};
}

CheckResult lower(std::string name, double measured, double bound) {
  return {std::move(name), std::isfinite(measured) && measured >= bound, measured, bound, true};
}

const Lattice& unit_lattice() {
  static const Lattice lattice(1.0, 1.0);
  return lattice;
}

BoundaryShape perturbed_shape() {
  const std::vector<int> modes{2, 3, 5};
  const std::vector<double> amps{0.1, 0.05, 0.03};
  const std::vector<double> phases{0.3, 1.1, 2.0};
  return BoundaryShape::radial_perturbation(modes, amps, phases);
}

struct NamedShape {
  std::string name;
  BoundaryShape shape;
};

std::vector<NamedShape> test_shapes() { return {{"circle", BoundaryShape::circle()}, {"perturbed", perturbed_shape()}}; }

PeriodicField field(std::vector<FourierMode> modes) { return PeriodicField::from_modes(unit_lattice(), modes); }

PeriodicField zero_field() { return field({}); }

// Ten bulk points of the unit cell, away from p = (0.5, 0.5).
std::vector<Vec2> bulk_probes() {
  return {{0.1, 0.1},  {0.2, 0.7},  {0.85, 0.3}, {0.3, 0.35}, {0.7, 0.8},
          {0.05, 0.5}, {0.5, 0.05}, {0.95, 0.9}, {0.62, 0.41}, {0.4, 0.93}};
}

// f = 1 + zero-mean part, f = 1 and the zero-mean field with f(p) = 0 and grad P(p) = 0 at p = (0.5, 0.5).
PeriodicField unit_source() { return field({{0, 0, 1.0}}); }
PeriodicField balanced_zero_mean_source() {
  return field({{1, 0, 0.5}, {0, 1, -0.5}, {2, 0, 0.25}, {1, 1, -0.125}, {1, -1, -0.125}});
}
PeriodicField unit_plus_zero_mean_source() { return field({{0, 0, 1.0}, {1, 0, 0.2}, {0, 1, {0.0, -0.15}}}); }

ProblemData generic_problem(double eps) {
  return {eps, {0.45, 0.55}, perturbed_shape(), trig_boundary_data({0.3, 0.5, -0.2, 0.1, 0.25}),
          field({{0, 0, 1.0}, {1, 0, 0.2}, {0, 1, {0.0, -0.15}}, {1, 1, {0.05, 0.1}}}), kN};
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// 1: Ewald against the regularized Fourier oracle, split independence, zero cell mean.
void green_cross_validation(const AcceptanceOptions& opt, std::vector<CheckResult>& out) {
  std::vector<std::pair<std::string, Lattice>> lattices{{"unit", unit_lattice()}, {"1x0.7", Lattice(1.0, 0.7)}};
  if (opt.extra_lattice) lattices.emplace_back("config", *opt.extra_lattice);
  std::mt19937_64 rng(opt.seed);
  for (const auto& [name, lattice] : lattices) {
    const LatticeGreen green(lattice);
    const LatticeGreen doubled(lattice.with_split(2.0 * lattice.ewald_split()));
    std::uniform_real_distribution<double> ux(0.0, lattice.q11()), uy(0.0, lattice.q22());
    double vs_oracle = 0.0, oracle_delta = 0.0, split_value = 0.0, split_gradient = 0.0;
    for (int count = 0; count < 20;) {
      const Vec2 x{ux(rng), uy(rng)};
      if (lattice.distance_to_lattice(x) < 0.15) continue;
      ++count;
      const GreenValue e = green.periodic_both(x);
      const double o = oracle::fourier_green(lattice, x, 0.002);
      vs_oracle = std::max(vs_oracle, std::abs(e.value - o));
      oracle_delta = std::max(oracle_delta, std::abs(o - oracle::fourier_green(lattice, x, 0.005)));
      const GreenValue d = doubled.periodic_both(x);
      split_value = std::max(split_value, std::abs(e.value - d.value));
      split_gradient = std::max(split_gradient, norm(e.gradient - d.gradient));
    }
    out.push_back(upper(name + ": Ewald vs Fourier oracle at 20 random points", vs_oracle, 1e-10));
    out.push_back(upper(name + ": oracle delta = 0.002 vs 0.005", oracle_delta, 1e-12));
    out.push_back(upper(name + ": split doubling, value", split_value, 1e-10));
    out.push_back(upper(name + ": split doubling, gradient", split_gradient, 1e-10));
    out.push_back(upper(name + ": |cell mean of S_q|", std::abs(oracle::green_cell_mean(green)), 1e-6));
    out.push_back(upper(name + ": R_q(0) vs Fourier oracle",
                        std::abs(green.remainder({0.0, 0.0}) - oracle::fourier_remainder_origin(lattice)), 1e-10));
  }
}

// 2: Gauss test for density 1 and the jump relations by normal extrapolation.
void gauss_and_jump(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const std::vector<Vec2> inside{{0.0, 0.0}, {0.3, 0.2}, {-0.4, 0.1}, {0.1, -0.45}};
  const std::vector<Vec2> outside{{1.6, 0.0}, {0.0, -2.0}, {-1.5, 1.2}, {3.0, 4.0}};
  auto theta = [](double t) { return 1.0 + 0.5 * std::cos(t) + 0.3 * std::sin(2 * t) - 0.2 * std::cos(3 * t); };
  for (const NamedShape& s : test_shapes()) {
    const BoundaryNodes nodes = s.shape.sample(kN);
    const std::vector<double> ones(kN, 1.0);
    std::vector<double> w_in(inside.size()), w_out(outside.size());
    classical_double_layer(nodes, ones, inside, w_in);
    classical_double_layer(nodes, ones, outside, w_out);
    double err_in = 0.0, err_out = 0.0;
    for (double w : w_in) err_in = std::max(err_in, std::abs(w - 1.0));
    for (double w : w_out) err_out = std::max(err_out, std::abs(w));
    out.push_back(upper(s.name + ": Gauss, density 1 inside", err_in, 1e-10));
    out.push_back(upper(s.name + ": Gauss, density 1 outside", err_out, 1e-10));

    std::vector<double> density(kN);
    for (int j = 0; j < kN; ++j) density[j] = theta(nodes.angle[j]);
    const std::vector<double> pv = classical_double_layer_trace(nodes, density);
    const int fine = 4096;
    std::vector<double> offsets;
    for (int k = 1; k <= 6; ++k) offsets.push_back(0.01 * k);
    double jump_ext = 0.0, jump_int = 0.0, near_vs_oracle = 0.0;
    for (int i = 0; i < kN; i += kN / 8) {
      const Vec2 x0 = nodes.point[i];
      const Vec2 nu = nodes.normal[i];
      std::vector<double> ext, in;
      for (double d : offsets) {
        ext.push_back(classical_double_layer_eval(s.shape, density, x0 + d * nu, fine));
        in.push_back(classical_double_layer_eval(s.shape, density, x0 - d * nu, fine));
      }
      near_vs_oracle = std::max(
          near_vs_oracle, std::abs(ext.front() - oracle::adaptive_double_layer(s.shape, theta, x0 + offsets[0] * nu)));
      const double w_minus = polyfit(offsets, ext, 5)[0];
      const double w_plus = polyfit(offsets, in, 5)[0];
      jump_ext = std::max(jump_ext, std::abs(w_minus - (pv[i] - 0.5 * density[i])));
      jump_int = std::max(jump_int, std::abs(w_plus - (pv[i] + 0.5 * density[i])));
    }
    out.push_back(upper(s.name + ": exterior trace = -theta/2 + PV", jump_ext, 1e-6));
    out.push_back(upper(s.name + ": interior trace = +theta/2 + PV", jump_int, 1e-6));
    out.push_back(upper(s.name + ": near-curve double layer vs adaptive quadrature", near_vs_oracle, 1e-10));
  }
}

// 3: constant data reproduce the constant exactly.
void constant_solution(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const double g0 = 1.7;
  const std::vector<Vec2> probes = bulk_probes();
  for (const NamedShape& s : test_shapes()) {
    for (double eps : {0.0, 1e-3, 1e-2}) {
      const ProblemData data{eps, {0.5, 0.5}, s.shape, constant_boundary_data(g0), zero_field(), kN};
      const DensitySolution d = eps == 0.0 ? solve_limit(s.shape, data.g, data.f, data.p, kN) : solve_density(data);
      std::ostringstream tag;
      tag << s.name << ", eps = " << eps << ": ";
      out.push_back(upper(tag.str() + "max |theta#|", max_abs(d.theta), 1e-12));
      out.push_back(upper(tag.str() + "|c# - g0|", std::abs(d.constant - g0), 1e-12));
      double err_u = 0.0, err_ufrak = 0.0;
      for (const FieldSample& f : FieldEvaluator(data, d).sample(probes)) {
        if (eps > 0.0) err_u = std::max(err_u, std::abs(f.u - g0));
        err_ufrak = std::max(err_ufrak, std::abs(f.ufrak - g0));
      }
      if (eps > 0.0) out.push_back(upper(tag.str() + "max |u - g0|", err_u, 1e-12));
      out.push_back(upper(tag.str() + "max |ufrak - g0|", err_ufrak, 1e-12));
      if (eps == 0.0) {
        double err_lim = 0.0;
        for (Vec2 x : {Vec2{2.0, 0.0}, Vec2{-1.5, 3.0}, Vec2{40.0, -7.0}})
          err_lim = std::max(err_lim, std::abs(eval_limit_field(s.shape, d, x) - g0));
        out.push_back(upper(tag.str() + "max |u~# - g0| outside the hole", err_lim, 1e-12));
      }
    }
  }
}

// 4: manufactured solutions.
double manufactured_error(const ProblemData& data, const std::function<double(const Vec2&)>& exact) {
  const DensitySolution d = solve_density(data);
  double err = 0.0;
  for (const FieldSample& f : FieldEvaluator(data, d).sample(bulk_probes()))
    err = std::max(err, std::abs(f.u - exact(f.point)));
  return err;
}

void manufactured(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const LatticeGreen green(unit_lattice());
  const Vec2 p{0.5, 0.5};
  for (const NamedShape& s : test_shapes()) {
    for (double eps : {1e-2, 5e-2}) {
      std::ostringstream tag;
      tag << s.name << ", eps = " << eps << ": ";
      const BoundaryShape& shape = s.shape;
      auto trace = [shape, p, eps](std::function<double(const Vec2&)> u) {
        return [shape, p, eps, u](double t) { return u(p + eps * shape.point(t)); };
      };

      // S_q(. - p) solves Delta u = -1/|Q| off p + qZ^2, i.e. f = -1/|Q| with int f = -1.
      auto green_solution = [&green, p](const Vec2& x) { return green.periodic(x - p); };
      ProblemData a{eps, p, shape, trace(green_solution), field({{0, 0, -1.0}}), kN};
      out.push_back(upper(tag.str() + "(a) u = S_q(x - p), f = -1/|Q|", manufactured_error(a, green_solution), 1e-8));

      // Harmonic periodic dipole pair with poles inside the hole, f = 0.
      const Vec2 pa{0.3, 0.1}, pb{-0.2, -0.25};
      auto dipole = [&green, p, eps, pa, pb](const Vec2& x) {
        return 0.8 * (green.periodic(x - p - eps * pa) - green.periodic(x - p - eps * pb));
      };
      ProblemData h{eps, p, shape, trace(dipole), zero_field(), kN};
      out.push_back(upper(tag.str() + "(a) harmonic u, f = 0", manufactured_error(h, dipole), 1e-8));

      // P_q[f] - S_q(. - p) int f for a band-limited f with int f = 2.5.
      const PeriodicField f =
          field({{0, 0, 2.5}, {1, 0, 0.5}, {1, 2, {0.0, -0.25}}, {0, 3, 0.15}, {-2, 1, {0.1, 0.05}}});
      const CorrectedPotential potential(f, p);
      auto closed = [&potential](const Vec2& x) { return potential(x); };
      ProblemData b{eps, p, shape, trace(closed), f, kN};
      out.push_back(upper(tag.str() + "(b) u = P_q[f] - S_q(x - p) int f", manufactured_error(b, closed), 1e-8));

      // The two data above give theta# = 0 exactly; the sum with the dipole does not.
      auto combined = [&potential, dipole](const Vec2& x) { return potential(x) + dipole(x); };
      ProblemData bd{eps, p, shape, trace(combined), f, kN};
      out.push_back(upper(tag.str() + "(b) source plus harmonic dipole", manufactured_error(bd, combined), 1e-8));
    }
  }
}

SweepReport sweep(const PeriodicField& f, const std::vector<Vec2>& probes, const BoundaryShape& shape,
                  const BoundaryData& g) {
  const ProblemData base{0.0, {0.5, 0.5}, shape, g, f, kN};
  return epsilon_sweep(base, default_eps_grid(), probes, 1e-3);
}

const std::vector<Vec2>& slope_probes() {
  static const std::vector<Vec2> probes{{0.1, 0.2}, {0.8, 0.75}};
  return probes;
}

// 5: log coefficient.
void log_coefficient(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const double expected = 1.0 / (2.0 * kPi);
  const BoundaryShape circle = BoundaryShape::circle();
  const SweepReport unit = sweep(unit_source(), slope_probes(), circle, constant_boundary_data(0.0));
  out.push_back(upper("f = 1: relative slope error, probe 0", std::abs(unit.fits[0].b - expected) / expected, 1e-3));
  out.push_back(upper("f = 1: relative slope error, probe 1", std::abs(unit.fits[1].b - expected) / expected, 1e-3));
  out.push_back(upper("f = 1: slope probe independence", std::abs(unit.fits[0].b - unit.fits[1].b), 1e-4));

  const SweepReport shifted = sweep(unit_plus_zero_mean_source(), slope_probes(), circle, constant_boundary_data(0.0));
  out.push_back(upper("slope invariance under a zero-mean addition to f",
                      std::max(std::abs(shifted.fits[0].b - unit.fits[0].b), std::abs(shifted.fits[1].b - unit.fits[1].b)),
                      1e-4));

  const SweepReport balanced = sweep(balanced_zero_mean_source(), slope_probes(), circle, constant_boundary_data(0.0));
  out.push_back(upper("int f = 0: |slope|, probe 0", std::abs(balanced.fits[0].b), 1e-8));
  out.push_back(upper("int f = 0: |slope|, probe 1", std::abs(balanced.fits[1].b), 1e-8));
}

// 6: continuation to eps = 0 and the fit intercept.
void continuation(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const std::vector<double> grid{4e-3, 3e-3, 2e-3, 1e-3, -1e-3, -2e-3, -3e-3, -4e-3};
  const ContinuationReport r = continuation_check(generic_problem(0.0), grid, 3, 1e-6);
  out.push_back(upper("generic data: |extrapolated c#(0) - c~#|", r.c_error, 1e-6));
  out.push_back(upper("generic data: nodewise |extrapolated theta#(0) - theta~#|", r.theta_error, 1e-6));

  const ProblemData constant{0.0, {0.45, 0.55}, perturbed_shape(), constant_boundary_data(-0.4), zero_field(), kN};
  const ContinuationReport rc = continuation_check(constant, grid, 3, 1e-6);
  out.push_back(upper("constant data: |c#(eps) - g0| over the grid", std::abs(rc.c_extrapolated + 0.4), 1e-12));

  const PeriodicField f = unit_plus_zero_mean_source();
  const BoundaryShape circle = BoundaryShape::circle();
  const BoundaryData g = constant_boundary_data(0.0);
  const SweepReport report = sweep(f, slope_probes(), circle, g);
  const ProblemData limit_data{0.0, {0.5, 0.5}, circle, g, f, kN};
  const FieldEvaluator limit_field(limit_data, solve_limit(circle, g, f, limit_data.p, kN));
  double err = 0.0;
  for (std::size_t k = 0; k < slope_probes().size(); ++k)
    err = std::max(err, std::abs(report.fits[k].a - limit_field.sample(slope_probes()[k]).ufrak));
  out.push_back(upper("fit intercept vs ufrak at eps = 0", err, 1e-3));
}

// 7: c~# from the adjoint pairing and from the far field.
void two_routes(const AcceptanceOptions& opt, std::vector<CheckResult>& out) {
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double route_gap = 0.0, direct_gap = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<int> modes{2, 3, 4};
    const std::vector<double> amps{0.08 * unit(rng), 0.06 * unit(rng), 0.04 * unit(rng)};
    const std::vector<double> phases{kPi * unit(rng), kPi * unit(rng), kPi * unit(rng)};
    const BoundaryShape shape = BoundaryShape::radial_perturbation(modes, amps, phases);
    std::vector<double> gc(7);
    for (double& c : gc) c = unit(rng);
    std::vector<FourierMode> fm{{0, 0, 1.25 + 0.75 * unit(rng)}};
    for (int m = 0; m < 3; ++m) {
      const int k1 = static_cast<int>(std::lround(2.0 * unit(rng)));
      const int k2 = 1 + m % 2;
      fm.push_back({k1, k2, {0.3 * unit(rng), 0.3 * unit(rng)}});
    }
    const Vec2 p{0.5 + 0.2 * unit(rng), 0.5 + 0.2 * unit(rng)};
    const PeriodicField f = field(fm);
    const BoundaryData g = trig_boundary_data(gc);
    const double paired = limit_constant(shape, g, f, p, kN);
    const DensitySolution limit = solve_limit(shape, g, f, p, kN);
    const FarfieldEstimate far = farfield_constant_2d(shape, limit);
    route_gap = std::max(route_gap, std::abs(paired - far.value));
    direct_gap = std::max(direct_gap, std::abs(paired - limit.constant));
  }
  out.push_back(upper("5 random configurations: |limit_constant - far-field limit|", route_gap, 1e-6));
  out.push_back(upper("5 random configurations: |limit_constant - c~# of the limiting system|", direct_gap, 1e-10));

  const BoundaryShape circle = BoundaryShape::circle();
  const DensitySolution tau = adjoint_density(circle, kN);
  double dev = 0.0;
  for (double t : tau.theta) dev = std::max(dev, std::abs(t - 1.0 / (2.0 * kPi)));
  out.push_back(upper("circle: adjoint density = 1/(2 pi)", dev, 1e-10));
  const double c = limit_constant(circle, constant_boundary_data(0.0), unit_source(), {0.5, 0.5}, kN);
  out.push_back(upper("circle, g = 0, f = 1: |c~# - R_q(0)| (Fourier oracle)",
                      std::abs(c - oracle::fourier_remainder_origin(unit_lattice())), 1e-8));
}

// 8: nonvanishing of c~# and of the slope, closed-form sphere constant.
void nonvanishing(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const BoundaryData g = constant_boundary_data(0.0);
  for (const NamedShape& s : test_shapes()) {
    const double c = limit_constant(s.shape, g, unit_source(), {0.5, 0.5}, kN);
    out.push_back(lower(s.name + ": |c~#| for g = 0, int f = 1", std::abs(c), 1e-8));
  }
  const SweepReport r = sweep(unit_source(), slope_probes(), perturbed_shape(), g);
  out.push_back(lower("perturbed shape, g = 0, int f = 1: |fitted slope|", std::abs(r.fits[0].b), 1e-8));

  const double closed = -1.0 / (4.0 * kPi);
  out.push_back(upper("sphere_limit_constant_3d(3, 1, 1) vs -1/(4 pi)",
                      std::abs(sphere_limit_constant_3d(3, 1.0, 1.0) - closed), 1e-12));
  const double s3 = 4.0 * kPi;
  const double fd = 1.0 / ((2.0 - 3.0) * s3 * sphere_capacity_fd(3, 1.0));
  out.push_back(upper("sphere_limit_constant_3d(3, 1, 1) vs radial finite differences",
                      std::abs(sphere_limit_constant_3d(3, 1.0, 1.0) - fd), 1e-4));
}

// 9: spectral convergence in N and PDE residual checks of the field.
void convergence(const AcceptanceOptions&, std::vector<CheckResult>& out) {
  const double eps = 1e-2;
  const std::vector<NamedShape> shapes{{"perturbed", perturbed_shape()}, {"ellipse", BoundaryShape::ellipse(1.0, 0.7)}};
  for (const NamedShape& s : shapes) {
    ProblemData data = generic_problem(eps);
    data.shape = s.shape;
    data.n = 128;
    const DensitySolution coarse = solve_density(data);
    data.n = 256;
    const DensitySolution fine = solve_density(data);
    double diff = std::abs(coarse.constant - fine.constant);
    for (int j = 0; j < 128; ++j) diff = std::max(diff, std::abs(coarse.theta[j] - fine.theta[2 * j]));
    out.push_back(upper(s.name + ": N = 128 vs N = 256 density difference", diff, 1e-10));
  }

  const ProblemData data = generic_problem(eps);
  const DensitySolution density = solve_density(data);
  const FieldEvaluator ev(data, density);
  const std::vector<Vec2> probes{{0.15, 0.2}, {0.8, 0.3}, {0.3, 0.85}};

  double periodic = 0.0;
  for (const Vec2& x : probes) {
    const double u0 = ev.sample(x).u;
    for (int z1 = -1; z1 <= 1; ++z1)
      for (int z2 = -1; z2 <= 1; ++z2) periodic = std::max(periodic, std::abs(ev.sample(x + Vec2{1.0 * z1, 1.0 * z2}).u - u0));
  }
  out.push_back(upper("q-periodicity of u", periodic, 1e-10));

  const double h = 1e-3;
  auto laplacian = [h](const FieldEvaluator& e, const Vec2& x) {
    const std::vector<Vec2> stencil{x, x + Vec2{h, 0}, x - Vec2{h, 0}, x + Vec2{0, h}, x - Vec2{0, h}};
    const std::vector<FieldSample> s = e.sample(stencil);
    return (s[1].u + s[2].u + s[3].u + s[4].u - 4.0 * s[0].u) / (h * h);
  };
  double poisson = 0.0;
  for (const Vec2& x : probes) poisson = std::max(poisson, std::abs(laplacian(ev, x) - data.f(x)));
  out.push_back(upper("Poisson residual |Delta_h u - f|", poisson, 1e-4));

  ProblemData harmonic = data;
  harmonic.f = zero_field();
  const FieldEvaluator hv(harmonic, solve_density(harmonic));
  double lap = 0.0;
  for (const Vec2& x : probes) lap = std::max(lap, std::abs(laplacian(hv, x)));
  out.push_back(upper("harmonicity for f = 0, |Delta_h u|", lap, 1e-4));

  // Boundary trace: extrapolate along the normal from outside the hole.
  const FieldEvaluator trace_ev(data, density, 4096);
  std::vector<double> offsets;
  for (int k = 1; k <= 6; ++k) offsets.push_back(0.01 * k);
  double trace = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double t = 2.0 * kPi * i / 6.0 + 0.1;
    const ShapeKinematics k = data.shape.kinematics(t);
    std::vector<Vec2> pts;
    for (double d : offsets) pts.push_back(data.p + eps * (k.point + d * k.outward_normal));
    std::vector<double> u;
    for (const FieldSample& s : trace_ev.sample(pts)) u.push_back(s.u);
    trace = std::max(trace, std::abs(polyfit(offsets, u, 5)[0] - data.g(t)));
  }
  out.push_back(upper("boundary trace of u equals g", trace, 1e-6));

  double consistency = 0.0;
  for (const FieldSample& s : ev.sample(probes))
    consistency = std::max(consistency, std::abs(s.u - (s.ufrak + std::log(eps) / (2.0 * kPi) * cell_integral(data.f).value)));
  out.push_back(upper("u = ufrak + log(eps)/(2 pi) int f", consistency, 1e-12));
}

struct Criterion {
  const char* title;
  void (*run)(const AcceptanceOptions&, std::vector<CheckResult>&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"Green's function cross-validation", green_cross_validation},
      {"Gauss test and jump relations", gauss_and_jump},
      {"Constant-solution exactness", constant_solution},
      {"Manufactured solutions", manufactured},
      {"Log coefficient of u in eps", log_coefficient},
      {"Limiting continuation eps -> 0", continuation},
      {"Two routes to the limiting constant", two_routes},
      {"Nonvanishing of the limiting constant and slope", nonvanishing},
      {"Nystrom convergence and field residuals", convergence},
  };
  return list;
}

}  // namespace

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool VerifySummary::passed() const {
  return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed(); });
}

std::string VerifySummary::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const CriterionResult& c : criteria) {
    if (!c.error.empty())
      j["checks"].push_back({{"criterion", c.id}, {"name", c.title}, {"status", "fail"}, {"error", c.error}});
    for (const CheckResult& r : c.checks) {
      nlohmann::json item{{"criterion", c.id},
                          {"name", r.name},
                          {"status", r.passed ? "pass" : "fail"},
                          {"tolerance", r.tolerance},
                          {"bound", r.lower_bound ? "lower" : "upper"}};
      item["measured"] = std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json(nullptr);
      j["checks"].push_back(item);
    }
  }
  return j.dump(2);
}

int acceptance_criterion_count() { return static_cast<int>(criteria().size()); }

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > acceptance_criterion_count()) throw InvalidArgument("acceptance: no criterion " + std::to_string(id));
  const Criterion& c = criteria()[id - 1];
  CriterionResult result;
  result.id = id;
  result.title = c.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(options, result.checks);
  } catch (const std::exception& e) {
    result.error = e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

VerifySummary run_acceptance(const AcceptanceOptions& options) {
  VerifySummary summary;
  summary.seed = options.seed;
  for (int id = 1; id <= acceptance_criterion_count(); ++id) {
    summary.criteria.push_back(run_criterion(id, options));
    if (options.on_result) options.on_result(summary.criteria.back());
  }
  return summary;
}

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << r.checks.size() << " checks, ";
  s.precision(3);
  s << r.seconds << " s)";
  s.precision(3);
  if (!r.error.empty()) s << "\n    error: " << r.error;
  for (const CheckResult& c : r.checks) {
    if (c.passed) continue;
    s << "\n    " << c.name << ": measured " << c.measured << (c.lower_bound ? " < bound " : " > tolerance ")
      << c.tolerance;
  }
  return s.str();
}

}  // namespace perfo
