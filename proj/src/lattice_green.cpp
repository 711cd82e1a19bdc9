#include "perfo/lattice_green.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShellTolerance = 1e-15;

double exp_integral_e1(double u) {
  if (u > 700.0) return 0.0;
  return -std::expint(-u);
}

// Ein(u) = int_0^u (1 - e^{-t}) / t dt = E1(u) + log(u) + gamma, entire in u.
double entire_exp_integral(double u) {
  if (u <= 2.0) {
    double term = u;
    double sum = u;
    for (int k = 2; k < 60; ++k) {
      term *= -u / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return exp_integral_e1(u) + std::log(u) + std::numbers::egamma;
}

int real_space_cutoff(double alpha, double qmin) {
  for (int k = 1; k < 400; ++k) {
    const double r = (k + 0.5) * qmin;  // nearest point of shell k + 1
    const double u = alpha * alpha * r * r;
    const double per_term = std::max(exp_integral_e1(u) / (4.0 * kPi), std::exp(-u) / (2.0 * kPi * r));
    if (8.0 * (k + 1) * per_term < kShellTolerance) return k;
  }
  throw InvalidArgument("lattice: real-space Ewald cutoff does not converge; ewald_split too small");
}

int reciprocal_cutoff(double alpha, double qmax, double measure) {
  for (int k = 1; k < 400; ++k) {
    const double xi = (k + 1) / qmax;
    const double damp = std::exp(-kPi * kPi * xi * xi / (alpha * alpha));
    const double per_term = damp / measure * std::max(1.0 / (4.0 * kPi * kPi * xi * xi), 1.0 / (2.0 * kPi * xi));
    if (8.0 * (k + 1) * per_term < kShellTolerance) return k;
  }
  throw InvalidArgument("lattice: reciprocal Ewald cutoff does not converge; ewald_split too large");
}

}  // namespace

Lattice::Lattice(double q11, double q22, double ewald_split) : q11_(q11), q22_(q22) {
  if (!(q11 > 0.0) || !(q22 > 0.0) || !std::isfinite(q11) || !std::isfinite(q22))
    throw InvalidArgument("lattice: q11 and q22 must be positive and finite");
  alpha_ = ewald_split > 0.0 ? ewald_split : std::sqrt(kPi) / std::max(q11, q22);
  real_cutoff_ = real_space_cutoff(alpha_, std::min(q11, q22));
  recip_cutoff_ = reciprocal_cutoff(alpha_, std::max(q11, q22), cell_measure());
}

Vec2 Lattice::reduce(const Vec2& x) const {
  return {x.x - q11_ * std::round(x.x / q11_), x.y - q22_ * std::round(x.y / q22_)};
}

double Lattice::distance_to_lattice(const Vec2& x) const { return norm(reduce(x)); }

bool Lattice::contains(const Vec2& x) const { return x.x > 0.0 && x.x < q11_ && x.y > 0.0 && x.y < q22_; }

LatticeGreen::LatticeGreen(Lattice lattice)
    : lattice_(lattice),
      constant_(1.0 / (4.0 * lattice.ewald_split() * lattice.ewald_split() * lattice.cell_measure())) {
  const double a2 = lattice_.ewald_split() * lattice_.ewald_split();
  const int kk = lattice_.recip_cutoff();
  // Half-space: k and -k contribute identically, hence the factor 2.
  for (int k1 = 0; k1 <= kk; ++k1) {
    for (int k2 = -kk; k2 <= kk; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      const double xi1 = k1 / lattice_.q11();
      const double xi2 = k2 / lattice_.q22();
      const double xi_sq = xi1 * xi1 + xi2 * xi2;
      const double w = 2.0 * std::exp(-kPi * kPi * xi_sq / a2) / (4.0 * kPi * kPi * xi_sq * lattice_.cell_measure());
      recip_.push_back({xi1, xi2, w});
    }
  }
}

double LatticeGreen::exclusion_radius() const { return 1e-12 * std::min(lattice_.q11(), lattice_.q22()); }

void LatticeGreen::check_regular(const Vec2& x, bool allow_origin) const {
  const Vec2 xr = lattice_.reduce(x);
  if (norm(xr) > exclusion_radius()) return;
  if (allow_origin && norm2(x - xr) == 0.0) return;
  throw SingularPoint("lattice green: point (" + std::to_string(x.x) + ", " + std::to_string(x.y) +
                      ") is within the exclusion radius of a lattice point");
}

LatticeGreen::Parts LatticeGreen::ewald(const Vec2& xr, bool regular_origin, bool want_value,
                                        bool want_gradient) const {
  const double a2 = lattice_.ewald_split() * lattice_.ewald_split();
  const double q1 = lattice_.q11();
  const double q2 = lattice_.q22();
  double value = 0.0;
  Vec2 grad;

  const int kr = lattice_.real_cutoff();
  for (int z1 = -kr; z1 <= kr; ++z1) {
    for (int z2 = -kr; z2 <= kr; ++z2) {
      const Vec2 d{xr.x - q1 * z1, xr.y - q2 * z2};
      const double r2 = norm2(d);
      const double u = a2 * r2;
      if (regular_origin && z1 == 0 && z2 == 0) {
        if (want_value) value += (std::numbers::egamma + std::log(a2) - entire_exp_integral(u)) / (4.0 * kPi);
        if (want_gradient) {
          const double h = u > 1e-300 ? -std::expm1(-u) / u : 1.0;
          grad -= d * (a2 * h / (2.0 * kPi));
        }
        continue;
      }
      if (u > 745.0) continue;
      if (want_value) value -= exp_integral_e1(u) / (4.0 * kPi);
      if (want_gradient) grad += d * (std::exp(-u) / (2.0 * kPi * r2));
    }
  }

  for (const RecipTerm& t : recip_) {
    const double phase = 2.0 * kPi * (t.xi1 * xr.x + t.xi2 * xr.y);
    if (want_value) value -= t.weight * std::cos(phase);
    if (want_gradient) {
      const double s = 2.0 * kPi * t.weight * std::sin(phase);
      grad.x += s * t.xi1;
      grad.y += s * t.xi2;
    }
  }

  return {value + constant_, grad};
}

double LatticeGreen::periodic(const Vec2& x) const {
  check_regular(x, false);
  return ewald(lattice_.reduce(x), false, true, false).value;
}

Vec2 LatticeGreen::periodic_gradient(const Vec2& x) const {
  check_regular(x, false);
  return ewald(lattice_.reduce(x), false, false, true).gradient;
}

GreenValue LatticeGreen::periodic_both(const Vec2& x) const {
  check_regular(x, false);
  const Parts parts = ewald(lattice_.reduce(x), false, true, true);
  return {parts.value, parts.gradient};
}

double LatticeGreen::remainder(const Vec2& x) const {
  check_regular(x, true);
  const Vec2 xr = lattice_.reduce(x);
  if (norm2(x - xr) == 0.0) return ewald(x, true, true, false).value;
  return ewald(xr, false, true, false).value - classical_green(x);
}

Vec2 LatticeGreen::remainder_gradient(const Vec2& x) const {
  check_regular(x, true);
  const Vec2 xr = lattice_.reduce(x);
  if (norm2(x - xr) == 0.0) return ewald(x, true, false, true).gradient;
  return ewald(xr, false, false, true).gradient - classical_green_gradient(x);
}

}  // namespace perfo
