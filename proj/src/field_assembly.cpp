#include "perfo/field_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr int kOutlineNodes = 1024;

std::string describe(const Vec2& x) {
  std::ostringstream s;
  s.precision(17);
  s << "(" << x.x << ", " << x.y << ")";
  return s.str();
}

}  // namespace

bool inside_polygon(const BoundaryNodes& nodes, const Vec2& x) {
  int winding = 0;
  for (int j = 0; j < nodes.count; ++j) {
    const Vec2& a = nodes.point[j];
    const Vec2& b = nodes.point[(j + 1) % nodes.count];
    const double side = cross(b - a, x - a);
    if (a.y <= x.y) {
      if (b.y > x.y && side > 0.0) ++winding;
    } else if (b.y <= x.y && side < 0.0) {
      --winding;
    }
  }
  return winding != 0;
}

FieldEvaluator::FieldEvaluator(const ProblemData& data, const DensitySolution& density, int quadrature_n)
    : data_(data),
      density_(density),
      nodes_(data.shape.sample(quadrature_n > 0 ? quadrature_n : 2 * density.n)),
      theta_(trig_resample(density.theta, nodes_.count)),
      potential_(data.f, data.p),
      outline_(data.shape.sample(kOutlineNodes)) {
  if (density.theta.empty()) throw InvalidArgument("field: empty density");
  if (density.kind != DensityKind::rescaled && density.kind != DensityKind::limiting)
    throw InvalidArgument("field: expected a rescaled or limiting density");
  if (std::abs(density.eps - data.eps) > 0.0)
    throw InvalidArgument("field: density was solved for a different eps");
}

double FieldEvaluator::guard_distance() const {
  if (data_.eps == 0.0) return potential_.green().exclusion_radius();
  return 3.0 * std::abs(data_.eps) * nodes_.max_spacing();
}

double FieldEvaluator::clearance(const Vec2& x) const {
  const Lattice& lattice = data_.lattice();
  const Vec2 base = lattice.reduce(x - data_.p);
  const double eps = data_.eps;
  if (eps == 0.0) return norm(base);

  double reach = 0.0;
  for (const Vec2& y : outline_.point) reach = std::max(reach, norm(y));
  reach *= std::abs(eps);

  double best = std::numeric_limits<double>::infinity();
  for (int z1 = -1; z1 <= 1; ++z1) {
    for (int z2 = -1; z2 <= 1; ++z2) {
      const Vec2 y = base + Vec2{z1 * lattice.q11(), z2 * lattice.q22()};
      const double r = norm(y);
      if (r > reach + best) continue;
      const Vec2 w = y * (1.0 / eps);
      if (inside_polygon(outline_, w)) return -1.0;
      double d = std::numeric_limits<double>::infinity();
      for (const Vec2& node : outline_.point) d = std::min(d, norm(w - node));
      best = std::min(best, std::abs(eps) * d);
    }
  }
  return best;
}

EvaluationSet FieldEvaluator::admit(std::span<const Vec2> points) const {
  EvaluationSet set;
  const double guard = guard_distance();
  for (const Vec2& x : points) {
    if (!std::isfinite(x.x) || !std::isfinite(x.y)) throw InvalidArgument("field: non-finite evaluation point");
    const double c = clearance(x);
    if (c < 0.0) throw SingularPoint("field: point " + describe(x) + " lies inside a hole");
    if (c <= guard)
      throw SingularPoint("field: point " + describe(x) + " is within three node spacings of a hole boundary");
    set.points.push_back(x);
    set.clearance.push_back(c);
  }
  return set;
}

FieldSample FieldEvaluator::closed_form_terms(const Vec2& x) const {
  FieldSample s;
  s.point = x;
  s.parts.constant = density_.constant;
  s.parts.newtonian = potential_.newtonian_at(x);
  s.parts.corrector = potential_.corrector_at(x);
  const double mass = potential_.source_integral();
  if (data_.eps > 0.0 && mass != 0.0) s.parts.log_term = std::log(data_.eps) / (2.0 * std::numbers::pi) * mass;
  return s;
}

FieldSample FieldEvaluator::sample(const Vec2& x) const {
  return sample(std::span<const Vec2>(&x, 1), Execution::serial).front();
}

std::vector<FieldSample> FieldEvaluator::sample(std::span<const Vec2> points, Execution exec) const {
  admit(points);
  const int m = static_cast<int>(points.size());
  std::vector<double> dl(m, 0.0);
  periodic_double_layer(nodes_, theta_, potential_.green(), data_.p, data_.eps, points, dl, exec);

  std::vector<FieldSample> out(m);
  auto one = [&](int k) {
    FieldSample s = closed_form_terms(points[k]);
    s.parts.double_layer = dl[k];
    s.ufrak = s.parts.double_layer + s.parts.constant + s.parts.newtonian + s.parts.corrector;
    s.u = s.ufrak + s.parts.log_term;
    out[k] = s;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < m; ++k) one(k);
  } else {
    for (int k = 0; k < m; ++k) one(k);
  }
  return out;
}

FieldSample eval_u(const ProblemData& data, const DensitySolution& density, const Vec2& x) {
  if (!(data.eps > 0.0)) throw InvalidArgument("eval_u: eps must be positive");
  if (density.kind != DensityKind::rescaled) throw InvalidArgument("eval_u: expected a rescaled density");
  return FieldEvaluator(data, density).sample(x);
}

double eval_ufrak(const ProblemData& data, const DensitySolution& density, const Vec2& x) {
  return FieldEvaluator(data, density).sample(x).ufrak;
}

double eval_limit_field(const BoundaryShape& shape, const DensitySolution& limit, const Vec2& x, int quadrature_n) {
  if (limit.kind != DensityKind::limiting) throw InvalidArgument("eval_limit_field: expected a limiting density");
  const int n = quadrature_n > 0 ? quadrature_n : 2 * limit.n;
  if (inside_polygon(shape.sample(kOutlineNodes), x))
    throw SingularPoint("limit field: point " + describe(x) + " lies inside the reference hole");
  return classical_double_layer_eval(shape, limit.theta, x, n) + limit.constant;
}

}  // namespace perfo
