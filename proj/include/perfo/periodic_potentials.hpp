#pragma once

#include <complex>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "perfo/boundary_geometry.hpp"
#include "perfo/lattice_green.hpp"
#include "perfo/vec2.hpp"

namespace perfo {

/// One term c * exp(2 pi i (k1 x1 / q11 + k2 x2 / q22)) of a periodic field.
struct FourierMode {
  int k1 = 0;
  int k2 = 0;
  std::complex<double> coeff;
};

/// Band-limited q-periodic real function.
///
/// Coefficient convention: f^(k) = (1/|Q|) int_Q f(x) exp(-2 pi i k . q^{-1} x) dx,
/// so f(x) = sum_k f^(k) exp(2 pi i k . q^{-1} x). The field keeps both its
/// sparse mode list (used for pointwise evaluation) and M x M samples on the
/// grid x_{ij} = (i q11 / M, j q22 / M), row-major in i.
class PeriodicField {
 public:
  /// Builds a real field from modes, completing the Hermitian partner of each
  /// listed mode. Conflicting partners or a complex zero mode are rejected.
  /// The grid is raised from min_grid (power of two) until every mode fits
  /// strictly inside the Nyquist band.
  static PeriodicField from_modes(const Lattice& lattice, std::span<const FourierMode> modes, int min_grid = 64);
  /// Interprets M x M samples; throws if the trailing spectral shell exceeds
  /// 1e-13 relative (the field is not resolved on this grid).
  static PeriodicField from_samples(const Lattice& lattice, std::span<const double> samples, int grid);
  static PeriodicField constant(const Lattice& lattice, double value);

  const Lattice& lattice() const { return lattice_; }
  int grid_size() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  /// Nonzero modes, Hermitian-complete.
  const std::vector<FourierMode>& modes() const { return modes_; }
  std::complex<double> coefficient(int k1, int k2) const;
  int band_limit() const;

  double operator()(const Vec2& x) const;

 private:
  PeriodicField(const Lattice& lattice) : lattice_(lattice) {}
  void fill_samples();

  Lattice lattice_;
  int grid_ = 0;
  std::vector<FourierMode> modes_;
  std::map<std::pair<int, int>, std::complex<double>> index_;
  std::vector<double> samples_;
};

/// int_Q f, in units of f times area.
struct CellIntegral {
  double value = 0.0;
};

CellIntegral cell_integral(const PeriodicField& f);

/// Periodic Newtonian potential P_q[f] = int_Q S_q(. - y) f(y) dy via the
/// Fourier multiplier -1 / (4 pi^2 |q^{-1} k|^2); the zero mode is set to 0.
PeriodicField newtonian(const PeriodicField& f);

/// P_q[f](x) - S_q(x - p) int_Q f, which satisfies Delta U = f off p + q Z^2.
class CorrectedPotential {
 public:
  CorrectedPotential(const PeriodicField& f, const Vec2& p);

  const PeriodicField& source() const { return f_; }
  const PeriodicField& potential() const { return potential_; }
  const LatticeGreen& green() const { return green_; }
  const Vec2& center() const { return p_; }
  double source_integral() const { return integral_; }

  /// P_q[f](x).
  double newtonian_at(const Vec2& x) const { return potential_(x); }
  /// -S_q(x - p) int_Q f. Throws SingularPoint near p + q Z^2.
  double corrector_at(const Vec2& x) const;
  double operator()(const Vec2& x) const { return newtonian_at(x) + corrector_at(x); }

 private:
  PeriodicField f_;
  PeriodicField potential_;
  LatticeGreen green_;
  Vec2 p_;
  double integral_;
};

double corrected_potential_eval(const PeriodicField& f, const Vec2& p, const Vec2& x);

/// Trigonometric interpolation of equispaced periodic samples onto n equispaced nodes.
std::vector<double> trig_resample(std::span<const double> samples, int n);

/// Off-curve classical double layer
///   w[theta](x) = -int nu(s) . DS_2(x - phi(s)) theta(s) sigma(s) ds
/// by the N-node trapezoid rule. theta holds equispaced samples on [0, 2 pi);
/// it is trigonometrically resampled when its length differs from N.
/// Throws SingularPoint within 3 node spacings of the curve.
double classical_double_layer_eval(const BoundaryShape& shape, std::span<const double> theta, const Vec2& x,
                                   int n);

}  // namespace perfo
