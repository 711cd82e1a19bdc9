#include "perfo/periodic_potentials.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "perfo/errors.hpp"

namespace perfo {

namespace {

constexpr double kPi = std::numbers::pi;

// Owning FFTW buffer + plan for one in-place complex transform.
class FftwTransform {
 public:
  FftwTransform(int n0, int n1, int sign) : size_(static_cast<std::size_t>(n0) * n1) {
    data_ = fftw_alloc_complex(size_);
    plan_ = n1 == 1 ? fftw_plan_dft_1d(n0, data_, data_, sign, FFTW_ESTIMATE)
                    : fftw_plan_dft_2d(n0, n1, data_, data_, sign, FFTW_ESTIMATE);
  }
  ~FftwTransform() {
    fftw_destroy_plan(plan_);
    fftw_free(data_);
  }
  FftwTransform(const FftwTransform&) = delete;
  FftwTransform& operator=(const FftwTransform&) = delete;

  std::complex<double>& operator[](std::size_t i) { return reinterpret_cast<std::complex<double>*>(data_)[i]; }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t size_;
  fftw_complex* data_;
  fftw_plan plan_;
};

// FFT index -> signed frequency.
int frequency(int i, int m) { return i <= m / 2 ? i : i - m; }
int slot(int k, int m) { return k >= 0 ? k : k + m; }

}  // namespace

PeriodicField PeriodicField::from_modes(const Lattice& lattice, std::span<const FourierMode> modes, int min_grid) {
  PeriodicField f(lattice);
  for (const FourierMode& m : modes) {
    if (!std::isfinite(m.coeff.real()) || !std::isfinite(m.coeff.imag()))
      throw InvalidArgument("periodic field: non-finite coefficient");
    const auto key = std::make_pair(m.k1, m.k2);
    const auto partner = std::make_pair(-m.k1, -m.k2);
    if (m.k1 == 0 && m.k2 == 0 && std::abs(m.coeff.imag()) > 1e-14 * (1.0 + std::abs(m.coeff)))
      throw InvalidArgument("periodic field: zero mode must be real");
    auto check = [&](const std::pair<int, int>& k, std::complex<double> c) {
      auto it = f.index_.find(k);
      if (it == f.index_.end()) {
        f.index_[k] = c;
      } else if (std::abs(it->second - c) > 1e-14 * (1.0 + std::abs(c))) {
        throw InvalidArgument("periodic field: mode (" + std::to_string(k.first) + ", " + std::to_string(k.second) +
                              ") conflicts with the Hermitian partner of another entry");
      }
    };
    if (key == partner) {
      check(key, {m.coeff.real(), 0.0});
    } else {
      check(key, m.coeff);
      check(partner, std::conj(m.coeff));
    }
  }
  for (auto it = f.index_.begin(); it != f.index_.end();) {
    if (it->second == 0.0)
      it = f.index_.erase(it);
    else
      ++it;
  }
  for (const auto& [k, c] : f.index_) f.modes_.push_back({k.first, k.second, c});

  int grid = 8;
  while (grid < min_grid) grid *= 2;
  while (2 * f.band_limit() + 2 >= grid) grid *= 2;  // keeps the |k| = M/2 - 1 shell empty
  f.grid_ = grid;
  f.fill_samples();
  return f;
}

PeriodicField PeriodicField::from_samples(const Lattice& lattice, std::span<const double> samples, int grid) {
  if (grid < 8 || (grid & (grid - 1)) != 0) throw InvalidArgument("periodic field: grid must be a power of two >= 8");
  if (samples.size() != static_cast<std::size_t>(grid) * grid)
    throw InvalidArgument("periodic field: expected grid^2 samples");
  FftwTransform fft(grid, grid, FFTW_FORWARD);
  for (std::size_t i = 0; i < samples.size(); ++i) fft[i] = samples[i];
  fft.execute();
  const double scale = 1.0 / (static_cast<double>(grid) * grid);
  double largest = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) largest = std::max(largest, std::abs(fft[i]) * scale);

  PeriodicField f(lattice);
  f.grid_ = grid;
  double trailing = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const std::complex<double> c = fft[static_cast<std::size_t>(i) * grid + j] * scale;
      const int k1 = frequency(i, grid);
      const int k2 = frequency(j, grid);
      if (std::max(std::abs(k1), std::abs(k2)) >= grid / 2 - 1) trailing = std::max(trailing, std::abs(c));
      if (std::abs(c) > 1e-16 * largest) f.index_[{k1, k2}] = c;
    }
  }
  if (trailing > 1e-13 * std::max(largest, 1e-300))
    throw InvalidArgument("periodic field: samples not resolved on a " + std::to_string(grid) +
                          " grid (trailing spectral shell too large)");
  // Symmetrize so the mode list is exactly Hermitian.
  for (auto& [k, c] : f.index_) {
    auto it = f.index_.find({-k.first, -k.second});
    if (it == f.index_.end()) continue;
    const std::complex<double> avg = 0.5 * (c + std::conj(it->second));
    c = avg;
    it->second = std::conj(avg);
  }
  for (const auto& [k, c] : f.index_) f.modes_.push_back({k.first, k.second, c});
  f.samples_.assign(samples.begin(), samples.end());
  return f;
}

PeriodicField PeriodicField::constant(const Lattice& lattice, double value) {
  const FourierMode m{0, 0, value};
  return from_modes(lattice, std::span<const FourierMode>(&m, 1));
}

std::complex<double> PeriodicField::coefficient(int k1, int k2) const {
  auto it = index_.find({k1, k2});
  return it == index_.end() ? std::complex<double>{} : it->second;
}

int PeriodicField::band_limit() const {
  int b = 0;
  for (const FourierMode& m : modes_) b = std::max({b, std::abs(m.k1), std::abs(m.k2)});
  return b;
}

double PeriodicField::operator()(const Vec2& x) const {
  const double u = x.x / lattice_.q11();
  const double v = x.y / lattice_.q22();
  double sum = 0.0;
  for (const FourierMode& m : modes_) {
    const double phase = 2.0 * kPi * (m.k1 * u + m.k2 * v);
    sum += m.coeff.real() * std::cos(phase) - m.coeff.imag() * std::sin(phase);
  }
  return sum;
}

void PeriodicField::fill_samples() {
  FftwTransform fft(grid_, grid_, FFTW_BACKWARD);
  const std::size_t total = static_cast<std::size_t>(grid_) * grid_;
  for (std::size_t i = 0; i < total; ++i) fft[i] = 0.0;
  for (const FourierMode& m : modes_)
    fft[static_cast<std::size_t>(slot(m.k1, grid_)) * grid_ + slot(m.k2, grid_)] = m.coeff;
  fft.execute();
  samples_.resize(total);
  for (std::size_t i = 0; i < total; ++i) samples_[i] = fft[i].real();
}

CellIntegral cell_integral(const PeriodicField& f) {
  return {f.lattice().cell_measure() * f.coefficient(0, 0).real()};
}

PeriodicField newtonian(const PeriodicField& f) {
  std::vector<FourierMode> out;
  out.reserve(f.modes().size());
  const double q1 = f.lattice().q11();
  const double q2 = f.lattice().q22();
  for (const FourierMode& m : f.modes()) {
    if (m.k1 == 0 && m.k2 == 0) continue;
    const double xi_sq = (m.k1 / q1) * (m.k1 / q1) + (m.k2 / q2) * (m.k2 / q2);
    out.push_back({m.k1, m.k2, m.coeff * (-1.0 / (4.0 * kPi * kPi * xi_sq))});
  }
  return PeriodicField::from_modes(f.lattice(), out, f.grid_size());
}

CorrectedPotential::CorrectedPotential(const PeriodicField& f, const Vec2& p)
    : f_(f), potential_(newtonian(f)), green_(f.lattice()), p_(p), integral_(cell_integral(f).value) {}

double CorrectedPotential::corrector_at(const Vec2& x) const {
  if (integral_ == 0.0) return 0.0;
  return -green_.periodic(x - p_) * integral_;
}

double corrected_potential_eval(const PeriodicField& f, const Vec2& p, const Vec2& x) {
  return CorrectedPotential(f, p)(x);
}

std::vector<double> trig_resample(std::span<const double> samples, int n) {
  const int m = static_cast<int>(samples.size());
  if (m == n) return {samples.begin(), samples.end()};
  if (m < 1 || n < 1) throw InvalidArgument("trig_resample: empty sample set");
  FftwTransform forward(m, 1, FFTW_FORWARD);
  for (int i = 0; i < m; ++i) forward[i] = samples[i];
  forward.execute();

  FftwTransform backward(n, 1, FFTW_BACKWARD);
  for (int i = 0; i < n; ++i) backward[i] = 0.0;
  const int keep = std::min(m, n);
  // Frequencies |k| < keep/2 copy over; a shared Nyquist term is split between +-keep/2.
  for (int k = -(keep - 1) / 2; k <= (keep - 1) / 2; ++k) backward[slot(k, n)] = forward[slot(k, m)] / double(m);
  if (keep % 2 == 0) {
    const int h = keep / 2;
    const std::complex<double> c = (m == keep ? forward[h] : forward[h] + forward[slot(-h, m)]) / double(m);
    if (n == keep) {
      backward[h] += c;
    } else {
      backward[h] += 0.5 * c;
      backward[slot(-h, n)] += 0.5 * c;
    }
  }
  backward.execute();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = backward[i].real();
  return out;
}

double classical_double_layer_eval(const BoundaryShape& shape, std::span<const double> theta, const Vec2& x, int n) {
  const BoundaryNodes nodes = shape.sample(n);
  const std::vector<double> density = trig_resample(theta, n);
  const double guard = 3.0 * nodes.max_spacing();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec2 d = x - nodes.point[j];
    const double r2 = norm2(d);
    if (r2 < guard * guard) throw SingularPoint("double layer: evaluation point within 3 node spacings of the curve");
    sum -= dot(nodes.normal[j], d) / (2.0 * kPi * r2) * density[j] * nodes.sigma[j];
  }
  return sum * nodes.step;
}

}  // namespace perfo
