#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "perfo/bie_solver.hpp"
#include "perfo/errors.hpp"

namespace perfo {

/// Malformed or invalid configuration; key() names the offending dotted key.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string key, const std::string& message)
      : InvalidArgument(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Batch configuration. Text format: one `dotted.key = value` per line, value
/// a number or a bracketed comma list; `#` starts a comment.
///
///   lattice.q11, lattice.q22, lattice.ewald_split
///   hole.p = [x, y]            hole.shape = [a0x, a0y, a1x, b1x, a1y, b1y, ...]
///   data.g = [a0, a1, b1, ...] data.f = [k1, k2, re, im, ...]
///   numerics.N, numerics.M, numerics.quadrature
///   solve.eps
///   sweep.eps_max, sweep.eps_min, sweep.count, sweep.eps_grid = [...]
///   continuation.eps = [...]
///   eval.probes = [x1, y1, x2, y2, ...]
///   green.grid
struct RunConfig {
  double q11 = 1.0;
  double q22 = 1.0;
  double ewald_split = 0.0;
  Vec2 p{0.5, 0.5};
  std::vector<double> shape{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
  std::vector<double> g{0.0};
  std::vector<double> f{0.0, 0.0, 1.0, 0.0};
  int n = 256;
  int grid = 64;
  int quadrature = 0;
  double eps = 1e-2;
  double eps_max = 1e-2;
  double eps_min = 1e-3;
  int eps_count = 8;
  std::vector<double> eps_grid;  // overrides the geometric grid when set
  std::vector<double> continuation_eps{4e-3, 3e-3, 2e-3, 1e-3, -1e-3, -2e-3, -3e-3, -4e-3};
  std::vector<Vec2> probes{{0.1, 0.2}, {0.8, 0.75}, {0.3, 0.9}};
  int green_grid = 16;

  Lattice lattice() const { return Lattice(q11, q22, ewald_split); }
  BoundaryShape hole_shape() const { return BoundaryShape::from_coefficients(shape); }
  PeriodicField source() const;
  BoundaryData boundary_data() const { return trig_boundary_data(g); }
  ProblemData problem() const;
  std::vector<double> sweep_grid() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace perfo
