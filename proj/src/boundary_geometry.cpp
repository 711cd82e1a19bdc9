#include "perfo/boundary_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kCheckSamples = 4096;
constexpr int kAdjacencyWindow = 8;

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

double BoundaryNodes::integrate(std::span<const double> values) const {
  double sum = 0.0;
  for (int j = 0; j < count; ++j) sum += values[j] * sigma[j];
  return sum * step;
}

double BoundaryNodes::max_spacing() const { return *std::max_element(sigma.begin(), sigma.end()) * step; }

BoundaryShape BoundaryShape::from_coefficients(std::span<const double> flat) {
  if (flat.size() < 6 || (flat.size() - 2) % 4 != 0)
    throw InvalidArgument("shape: coefficient list must have length 2 + 4K with K >= 1, got " +
                          std::to_string(flat.size()));
  for (double c : flat)
    if (!std::isfinite(c)) throw InvalidArgument("shape: non-finite coefficient");
  BoundaryShape s;
  const std::size_t degree = (flat.size() - 2) / 4;
  s.ax_.assign(degree + 1, 0.0);
  s.bx_.assign(degree + 1, 0.0);
  s.ay_.assign(degree + 1, 0.0);
  s.by_.assign(degree + 1, 0.0);
  s.ax_[0] = flat[0];
  s.ay_[0] = flat[1];
  for (std::size_t k = 1; k <= degree; ++k) {
    const std::size_t o = 2 + 4 * (k - 1);
    s.ax_[k] = flat[o];
    s.bx_[k] = flat[o + 1];
    s.ay_[k] = flat[o + 2];
    s.by_[k] = flat[o + 3];
  }
  s.validate();
  return s;
}

BoundaryShape BoundaryShape::circle(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw InvalidArgument("circle: radius must be positive");
  const double c[] = {center.x, center.y, radius, 0.0, 0.0, radius};
  return from_coefficients(c);
}

BoundaryShape BoundaryShape::ellipse(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("ellipse: semi-axes must be positive");
  const double c[] = {0.0, 0.0, a, 0.0, 0.0, b};
  return from_coefficients(c);
}

BoundaryShape BoundaryShape::radial_perturbation(std::span<const int> modes, std::span<const double> amplitudes,
                                                 std::span<const double> phases) {
  if (modes.size() != amplitudes.size() || modes.size() != phases.size())
    throw InvalidArgument("shape: radial perturbation arrays differ in length");
  int top = 1;
  for (int m : modes) {
    if (m < 1) throw InvalidArgument("shape: radial perturbation modes must be >= 1");
    top = std::max(top, m + 1);
  }
  std::vector<double> flat(2 + 4 * top, 0.0);
  auto at = [&](int k, int slot) -> double& { return flat[2 + 4 * (k - 1) + slot]; };
  at(1, 0) = 1.0;  // cos t
  at(1, 3) = 1.0;  // sin t
  // A cos(mt + ph) cos t and A cos(mt + ph) sin t via product-to-sum.
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const int m = modes[i];
    const double ca = amplitudes[i] * std::cos(phases[i]);
    const double sa = -amplitudes[i] * std::sin(phases[i]);  // A cos(mt+ph) = ca cos mt + sa sin mt
    // cos mt cos t = (cos(m+1)t + cos(m-1)t)/2 ; sin mt cos t = (sin(m+1)t + sin(m-1)t)/2
    // cos mt sin t = (sin(m+1)t - sin(m-1)t)/2 ; sin mt sin t = (cos(m-1)t - cos(m+1)t)/2
    auto add = [&](int k, int slot, double v) {
      if (k == 0) {
        if (slot == 0) flat[0] += v;
        if (slot == 2) flat[1] += v;
        return;
      }
      if (k < 0) return;
      at(k, slot) += v;
    };
    add(m + 1, 0, 0.5 * ca);
    add(m - 1, 0, 0.5 * ca);
    add(m + 1, 1, 0.5 * sa);
    if (m - 1 > 0) add(m - 1, 1, 0.5 * sa);
    add(m + 1, 3, 0.5 * ca);
    if (m - 1 > 0) add(m - 1, 3, -0.5 * ca);
    add(m - 1, 2, 0.5 * sa);
    add(m + 1, 2, -0.5 * sa);
  }
  return from_coefficients(flat);
}

std::vector<double> BoundaryShape::coefficients() const {
  std::vector<double> flat{ax_[0], ay_[0]};
  for (int k = 1; k <= max_degree(); ++k) {
    flat.push_back(ax_[k]);
    flat.push_back(bx_[k]);
    flat.push_back(ay_[k]);
    flat.push_back(by_[k]);
  }
  return flat;
}

Vec2 BoundaryShape::point(double t) const {
  Vec2 r{ax_[0], ay_[0]};
  for (int k = 1; k <= max_degree(); ++k) {
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    r.x += ax_[k] * c + bx_[k] * s;
    r.y += ay_[k] * c + by_[k] * s;
  }
  return r;
}

Vec2 BoundaryShape::derivative(double t) const {
  Vec2 r;
  for (int k = 1; k <= max_degree(); ++k) {
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    r.x += k * (-ax_[k] * s + bx_[k] * c);
    r.y += k * (-ay_[k] * s + by_[k] * c);
  }
  return r;
}

Vec2 BoundaryShape::second_derivative(double t) const {
  Vec2 r;
  for (int k = 1; k <= max_degree(); ++k) {
    const double c = std::cos(k * t);
    const double s = std::sin(k * t);
    r.x -= k * k * (ax_[k] * c + bx_[k] * s);
    r.y -= k * k * (ay_[k] * c + by_[k] * s);
  }
  return r;
}

ShapeKinematics BoundaryShape::kinematics(double t) const {
  const Vec2 d1 = derivative(t);
  const Vec2 d2 = second_derivative(t);
  const double speed = norm(d1);
  return {point(t), d1, Vec2{d1.y / speed, -d1.x / speed}, speed, cross(d1, d2) / (speed * speed * speed)};
}

BoundaryNodes BoundaryShape::sample(int n) const {
  if (n < 8) throw InvalidArgument("shape: at least 8 quadrature nodes required");
  BoundaryNodes nodes;
  nodes.count = n;
  nodes.step = kTwoPi / n;
  nodes.angle.resize(n);
  nodes.point.resize(n);
  nodes.normal.resize(n);
  nodes.sigma.resize(n);
  nodes.curvature.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = nodes.step * j;
    const ShapeKinematics k = kinematics(t);
    nodes.angle[j] = t;
    nodes.point[j] = k.point;
    nodes.normal[j] = k.outward_normal;
    nodes.sigma[j] = k.sigma_tilde;
    nodes.curvature[j] = k.curvature;
  }
  return nodes;
}

BoundaryShape BoundaryShape::shifted(double shift) const {
  BoundaryShape s = *this;
  for (int k = 1; k <= max_degree(); ++k) {
    const double c = std::cos(k * shift);
    const double sn = std::sin(k * shift);
    s.ax_[k] = ax_[k] * c + bx_[k] * sn;
    s.bx_[k] = bx_[k] * c - ax_[k] * sn;
    s.ay_[k] = ay_[k] * c + by_[k] * sn;
    s.by_[k] = by_[k] * c - ay_[k] * sn;
  }
  return s;
}

void BoundaryShape::bounding_box(Vec2& lo, Vec2& hi) const {
  lo = hi = point(0.0);
  for (int j = 1; j < kCheckSamples; ++j) {
    const Vec2 r = point(kTwoPi * j / kCheckSamples);
    lo.x = std::min(lo.x, r.x);
    lo.y = std::min(lo.y, r.y);
    hi.x = std::max(hi.x, r.x);
    hi.y = std::max(hi.y, r.y);
  }
}

double BoundaryShape::area() const {
  // Exact for trigonometric polynomials of degree < kCheckSamples / 2.
  double sum = 0.0;
  for (int j = 0; j < kCheckSamples; ++j) {
    const double t = kTwoPi * j / kCheckSamples;
    sum += cross(point(t), derivative(t));
  }
  return 0.5 * sum * kTwoPi / kCheckSamples;
}

double BoundaryShape::length() const {
  double sum = 0.0;
  for (int j = 0; j < kCheckSamples; ++j) sum += norm(derivative(kTwoPi * j / kCheckSamples));
  return sum * kTwoPi / kCheckSamples;
}

void BoundaryShape::validate() const {
  std::vector<Vec2> pts(kCheckSamples);
  double min_speed = INFINITY;
  for (int j = 0; j < kCheckSamples; ++j) {
    const double t = kTwoPi * j / kCheckSamples;
    pts[j] = point(t);
    min_speed = std::min(min_speed, norm(derivative(t)));
  }
  if (!(min_speed > 1e-10)) throw InvalidArgument("shape: tangent vector vanishes (curve is not regular)");

  double mean_segment = 0.0;
  for (int j = 0; j < kCheckSamples; ++j) mean_segment += norm(pts[(j + 1) % kCheckSamples] - pts[j]);
  mean_segment /= kCheckSamples;
  const double touch = 0.5 * mean_segment;

  bool simple = true;
#pragma omp parallel for schedule(dynamic, 64) reduction(&& : simple)
  for (int i = 0; i < kCheckSamples; ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % kCheckSamples];
    for (int j = i + kAdjacencyWindow + 1; j < kCheckSamples; ++j) {
      if (kCheckSamples - (j - i) <= kAdjacencyWindow) break;
      const Vec2 c = pts[j];
      if (norm2(c - a) < touch * touch || segments_cross(a, b, c, pts[(j + 1) % kCheckSamples])) {
        simple = false;
        break;
      }
    }
  }
  if (!simple) throw InvalidArgument("shape: curve is not simple (self-intersecting or touching)");
  if (!(area() > 0.0)) throw InvalidArgument("shape: curve must be oriented counterclockwise");
}

bool hole_containment_check(const Lattice& lattice, const Vec2& p, double eps, const BoundaryShape& shape) {
  if (!lattice.contains(p)) return false;
  if (eps == 0.0) return true;
  Vec2 lo, hi;
  shape.bounding_box(lo, hi);
  const double x0 = p.x + std::min(eps * lo.x, eps * hi.x);
  const double x1 = p.x + std::max(eps * lo.x, eps * hi.x);
  const double y0 = p.y + std::min(eps * lo.y, eps * hi.y);
  const double y1 = p.y + std::max(eps * lo.y, eps * hi.y);
  constexpr double margin = 1e-9;
  return x0 > margin && y0 > margin && x1 < lattice.q11() - margin && y1 < lattice.q22() - margin;
}

}  // namespace perfo
