#include "sedsim/zpfield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sedsim/errors.hpp"
#include "sedsim/random.hpp"

namespace sedsim {

namespace {

// Unique counter per mode for the keyed generator.
std::uint64_t mode_counter(const ModeId& mode) {
  return (static_cast<std::uint64_t>(mode.n) << 2) |
         (static_cast<std::uint64_t>(mode.direction) << 1) |
         static_cast<std::uint64_t>(mode.polarization);
}

// Largest mode table we will precompute (1 GiB of amplitudes). The paper-size
// lattice needs ~70 MB; anything past the cap must use Storage::on_demand or a
// larger r_cutoff.
constexpr std::int64_t kMaxTableModes = (1ll << 30) / 64;

}  // namespace

Vec3 propagation_unit(WaveDirection d) {
  return d == WaveDirection::plus_z ? Vec3{0, 0, 1} : Vec3{0, 0, -1};
}

Vec3 polarization_unit(Polarization p) {
  return p == Polarization::x ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
}

double mode_frequency(std::int64_t n, const CavityConfig& cavity, const PhysicalConstants& k) {
  if (n < 1) throw std::domain_error("mode_frequency: lattice index must be >= 1");
  return static_cast<double>(n) * cavity.omega_min(k);
}

std::int64_t max_mode_index(const CavityConfig& cavity, const PhysicalConstants& k) {
  return static_cast<std::int64_t>(std::floor(cavity.omega_max(k) / cavity.omega_min(k)));
}

std::int64_t mode_count(const CavityConfig& cavity, const PhysicalConstants& k) {
  return 2 * max_mode_index(cavity, k);
}

ModeAmplitudes amplitudes(std::uint64_t seed, const ModeId& mode, const CavityConfig& cavity,
                          const PhysicalConstants& k) {
  if (mode.n < 1 || mode.n > max_mode_index(cavity, k))
    throw std::domain_error("amplitudes: mode index outside [1, n_max]");
  const double omega = mode_frequency(mode.n, cavity, k);
  const double sigma = std::sqrt(2.0 * std::numbers::pi * k.hbar * omega);
  const GaussianPair g = gaussian_pair(seed, mode_counter(mode));
  return {sigma * g.first, sigma * g.second};
}

WindowBounds window_bounds(double r, double f, const PhysicalConstants& k) {
  if (!(r > 0.0)) throw std::domain_error("window_bounds: radius must be positive");
  if (!(f >= 0.0) || !(f < 1.0))
    throw std::domain_error("window_bounds: window fraction must lie in [0, 1)");
  const double r_high = r * (1.0 + f);
  const double r_low = r * (1.0 - f);
  return {circular_frequency(r_high, k), circular_frequency(r_low, k)};
}

FieldRealization::FieldRealization(std::uint64_t seed, const CavityConfig& cavity,
                                   const PhysicalConstants& k, Storage storage,
                                   double amplitude_scale)
    : seed_(seed),
      cavity_(cavity),
      constants_(k),
      amplitude_scale_(amplitude_scale),
      n_max_(max_mode_index(cavity, k)),
      omega_min_(cavity.omega_min(k)),
      volume_(cavity.volume()),
      inv_sqrt_volume_(1.0 / std::sqrt(cavity.volume())) {
  if (n_max_ < 1) throw ValidationError("cavity.r_cutoff leaves no modes below omega_max");
  if (storage == Storage::table) {
    if (n_max_ > kMaxTableModes)
      throw ValidationError(
          "cavity: mode table would exceed 1 GiB; raise cavity.r_cutoff, shorten cavity.lz, "
          "or use on-demand amplitude generation");
    table_.resize(static_cast<std::size_t>(n_max_) * 8);
    for (std::int64_t n = 1; n <= n_max_; ++n) {
      double* row = table_.data() + (n - 1) * 8;
      std::size_t slot = 0;
      for (WaveDirection dir : {WaveDirection::plus_z, WaveDirection::minus_z}) {
        for (Polarization pol : {Polarization::x, Polarization::y}) {
          const ModeAmplitudes amp = amplitudes(seed_, {n, dir, pol}, cavity_, constants_);
          row[slot++] = amplitude_scale_ * amp.a;
          row[slot++] = amplitude_scale_ * amp.b;
        }
      }
    }
  }
}

WindowRange FieldRealization::window_indices(double r, double f) const {
  const WindowBounds b = window_bounds(r, f, constants_);
  std::int64_t n_lo = static_cast<std::int64_t>(std::ceil(b.omega_lo / omega_min_));
  std::int64_t n_hi = static_cast<std::int64_t>(std::floor(b.omega_hi / omega_min_));
  n_lo = std::max<std::int64_t>(n_lo, 1);
  n_hi = std::min(n_hi, n_max_);
  if (n_lo > n_hi) return {1, 0};
  return {n_lo, n_hi};
}

ModeAmplitudes FieldRealization::mode_amplitudes(const ModeId& mode) const {
  const ModeAmplitudes amp = amplitudes(seed_, mode, cavity_, constants_);
  return {amplitude_scale_ * amp.a, amplitude_scale_ * amp.b};
}

EmFields FieldRealization::fields_at(double t, const WindowRange& window) const {
  EmFields out;
  if (window.empty()) return out;
  if (window.n_lo < 1 || window.n_hi > n_max_)
    throw std::domain_error("fields_at: window outside [1, n_max]");

  // The electron sits in the z = 0 plane and every retained wave runs along
  // +-z, so the phase argument k.x - w t reduces to -w_n t for all of them:
  //   cos(-w_n t) = cos(w_n t),  sin(-w_n t) = -sin(w_n t).
  // Phases along the lattice advance by a fixed rotation, so one sincos pair
  // plus a complex recurrence covers the whole window.
  const double base = omega_min_ * t;
  double cos_nt = std::cos(base * static_cast<double>(window.n_lo));
  double sin_nt = std::sin(base * static_cast<double>(window.n_lo));
  const double cos_dt = std::cos(base);
  const double sin_dt = std::sin(base);

  double ex = 0.0, ey = 0.0, bx = 0.0, by = 0.0;

  auto accumulate = [&](const double* row, double c, double s) {
    // row layout: A,B for (+z,x), (+z,y), (-z,x), (-z,y)
    const double term_px = row[0] * c - row[1] * s;
    const double term_py = row[2] * c - row[3] * s;
    const double term_mx = row[4] * c - row[5] * s;
    const double term_my = row[6] * c - row[7] * s;
    ex += term_px + term_mx;
    ey += term_py + term_my;
    // B replaces the polarization vector by k_hat x eps:
    //   +z: x->+y, y->-x;  -z: x->-y, y->+x
    bx += term_my - term_py;
    by += term_px - term_mx;
  };

  if (!table_.empty()) {
    const double* row = table_.data() + (window.n_lo - 1) * 8;
    for (std::int64_t n = window.n_lo; n <= window.n_hi; ++n, row += 8) {
      accumulate(row, cos_nt, sin_nt);
      const double c_next = cos_nt * cos_dt - sin_nt * sin_dt;
      sin_nt = sin_nt * cos_dt + cos_nt * sin_dt;
      cos_nt = c_next;
    }
  } else {
    double row[8];
    for (std::int64_t n = window.n_lo; n <= window.n_hi; ++n) {
      std::size_t slot = 0;
      for (WaveDirection dir : {WaveDirection::plus_z, WaveDirection::minus_z}) {
        for (Polarization pol : {Polarization::x, Polarization::y}) {
          const ModeAmplitudes amp = amplitudes(seed_, {n, dir, pol}, cavity_, constants_);
          row[slot++] = amplitude_scale_ * amp.a;
          row[slot++] = amplitude_scale_ * amp.b;
        }
      }
      accumulate(row, cos_nt, sin_nt);
      const double c_next = cos_nt * cos_dt - sin_nt * sin_dt;
      sin_nt = sin_nt * cos_dt + cos_nt * sin_dt;
      cos_nt = c_next;
    }
  }

  out.e = {inv_sqrt_volume_ * ex, inv_sqrt_volume_ * ey, 0.0};
  out.b = {inv_sqrt_volume_ * bx, inv_sqrt_volume_ * by, 0.0};
  return out;
}

}  // namespace sedsim
