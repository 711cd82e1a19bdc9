#pragma once

#include <numbers>
#include <vector>

#include "perfo/vec2.hpp"

namespace perfo {

/// Rectangular periodicity cell Q = ]0,q11[ x ]0,q22[ with Ewald parameters.
///
/// The truncation radii are derived from analytic tail bounds so that the
/// first omitted shell contributes less than 1e-14; they can be raised but
/// never lowered below that bound.
class Lattice {
 public:
  /// ewald_split <= 0 selects the default sqrt(pi) / max(q11, q22).
  Lattice(double q11, double q22, double ewald_split = 0.0);

  double q11() const { return q11_; }
  double q22() const { return q22_; }
  double cell_measure() const { return q11_ * q22_; }
  double ewald_split() const { return alpha_; }
  int real_cutoff() const { return real_cutoff_; }
  int recip_cutoff() const { return recip_cutoff_; }

  /// Same cell, different splitting parameter (cutoffs recomputed).
  Lattice with_split(double ewald_split) const { return Lattice(q11_, q22_, ewald_split); }

  /// x - q z for the lattice vector q z nearest to x.
  Vec2 reduce(const Vec2& x) const;
  /// Distance from x to the nearest point of q Z^2.
  double distance_to_lattice(const Vec2& x) const;
  /// True iff x lies in the open cell Q.
  bool contains(const Vec2& x) const;

 private:
  double q11_;
  double q22_;
  double alpha_;
  int real_cutoff_;
  int recip_cutoff_;
};

/// Value and gradient of a scalar kernel at one point.
struct GreenValue {
  double value = 0.0;
  Vec2 gradient;
};

/// Classical fundamental solution S_2(x) = log|x| / (2 pi).
inline double classical_green(const Vec2& x) { return std::log(norm(x)) / (2.0 * std::numbers::pi); }
/// DS_2(x) = x / (2 pi |x|^2).
inline Vec2 classical_green_gradient(const Vec2& x) {
  return x * (1.0 / (2.0 * std::numbers::pi * norm2(x)));
}

/// Periodic fundamental solution of the Laplacian on a rectangular lattice.
///
/// S_q solves Delta S_q = sum_z delta_{qz} - 1/|Q| and is normalized to zero
/// mean over the cell (its Fourier series has no zero mode). Evaluation uses
/// Ewald splitting:
///
///   S_q(x) = -1/(4 pi) sum_z E1(a^2 |x - qz|^2)
///            - 1/|Q| sum_{k != 0} exp(-pi^2 |xi_k|^2 / a^2) / (4 pi^2 |xi_k|^2) cos(2 pi xi_k . x)
///            + 1 / (4 a^2 |Q|),                       xi_k = q^{-1} k,
///
/// where the constant is the one that makes the cell mean vanish.
///
/// R_q = S_q - S_2 is evaluated without cancellation near the origin by
/// replacing the z = 0 real-space term with its entire part
/// (gamma + log a^2 - Ein(a^2 |x|^2)) / (4 pi).
///
/// Instances are immutable; all members are safe to call concurrently.
class LatticeGreen {
 public:
  explicit LatticeGreen(Lattice lattice);

  const Lattice& lattice() const { return lattice_; }

  /// Points closer than this to q Z^2 are rejected by the S_q evaluators.
  double exclusion_radius() const;

  /// S_q(x). Throws SingularPoint near q Z^2.
  double periodic(const Vec2& x) const;
  /// DS_q(x). Throws SingularPoint near q Z^2.
  Vec2 periodic_gradient(const Vec2& x) const;
  GreenValue periodic_both(const Vec2& x) const;

  /// R_q(x) = S_q(x) - S_2(x), analytically continued to x = 0.
  /// Throws SingularPoint near q Z^2 \ {0}.
  double remainder(const Vec2& x) const;
  /// DR_q(x); zero at the origin.
  Vec2 remainder_gradient(const Vec2& x) const;

 private:
  struct Parts {
    double value;
    Vec2 gradient;
  };
  // Ewald sum at a reduced point; regular_origin drops the log singularity of the z = 0 image.
  Parts ewald(const Vec2& xr, bool regular_origin, bool want_value, bool want_gradient) const;
  void check_regular(const Vec2& x, bool allow_origin) const;

  struct RecipTerm {
    double xi1;
    double xi2;
    double weight;
  };

  Lattice lattice_;
  double constant_;
  std::vector<RecipTerm> recip_;
};

}  // namespace perfo
