#pragma once

#include <cstdint>
#include <vector>

#include "sedsim/config.hpp"
#include "sedsim/constants.hpp"
#include "sedsim/vec.hpp"

namespace sedsim {

enum class WaveDirection : int { plus_z = 0, minus_z = 1 };
enum class Polarization : int { x = 0, y = 1 };

Vec3 propagation_unit(WaveDirection d);
Vec3 polarization_unit(Polarization p);

struct ModeId {
  std::int64_t n = 1;  // frequency lattice index, omega_n = n * omega_min
  WaveDirection direction = WaveDirection::plus_z;
  Polarization polarization = Polarization::x;
};

// Expansion coefficients of one mode, before the 1/sqrt(V) normalization.
struct ModeAmplitudes {
  double a = 0.0;
  double b = 0.0;
};

// Contiguous inclusive range of retained lattice indices; n_lo > n_hi is empty.
struct WindowRange {
  std::int64_t n_lo = 1;
  std::int64_t n_hi = 0;

  bool empty() const { return n_lo > n_hi; }
  std::int64_t count() const { return empty() ? 0 : n_hi - n_lo + 1; }
  bool contains(std::int64_t n) const { return n >= n_lo && n <= n_hi; }
  bool operator==(const WindowRange&) const = default;
};

// omega_n = n * 2 pi c / L_z. Throws std::domain_error for n < 1.
double mode_frequency(std::int64_t n, const CavityConfig& cavity, const PhysicalConstants& k);

// Largest lattice index below the cutoff, floor(omega_max / omega_min).
std::int64_t max_mode_index(const CavityConfig& cavity, const PhysicalConstants& k);

// Number of retained plane waves: one per direction per lattice frequency
// (each wave carries both polarizations as amplitude pairs), i.e. 2 * n_max.
// Counting polarizations separately would double this.
std::int64_t mode_count(const CavityConfig& cavity, const PhysicalConstants& k);

// Gaussian amplitude pair for one mode: zero mean, variance 2 pi hbar omega_n,
// a pure function of (seed, mode). Throws std::domain_error for an invalid mode.
ModeAmplitudes amplitudes(std::uint64_t seed, const ModeId& mode, const CavityConfig& cavity,
                          const PhysicalConstants& k);

struct WindowBounds {
  double omega_lo = 0.0;
  double omega_hi = 0.0;
};

// Frequency band of the retained window around radius r: circular-orbit
// frequencies of r(1+f) (low edge) and r(1-f) (high edge).
// Throws std::domain_error for r <= 0 or f outside [0, 1).
WindowBounds window_bounds(double r, double f, const PhysicalConstants& k);

struct EmFields {
  Vec3 e;  // [statvolt/cm]
  Vec3 b;  // [gauss]
};

// One frozen draw of the zero-point field for a given seed: the discrete
// lattice of +z/-z plane waves with Gaussian amplitude pairs. Immutable after
// construction and safe to share across threads.
class FieldRealization {
 public:
  enum class Storage {
    table,      // precompute all amplitudes up front (fast evaluation)
    on_demand,  // regenerate amplitudes per evaluation (O(1) memory)
  };

  FieldRealization(std::uint64_t seed, const CavityConfig& cavity, const PhysicalConstants& k,
                   Storage storage = Storage::table, double amplitude_scale = 1.0);

  std::uint64_t seed() const { return seed_; }
  const CavityConfig& cavity() const { return cavity_; }
  const PhysicalConstants& constants() const { return constants_; }
  std::int64_t n_max() const { return n_max_; }
  double omega_min() const { return omega_min_; }
  double volume() const { return volume_; }
  double amplitude_scale() const { return amplitude_scale_; }

  WindowRange full_range() const { return {1, n_max_}; }

  // Lattice indices n with omega_lo <= n * omega_min <= omega_hi, clamped to
  // [1, n_max]. May be empty when no lattice point falls inside the band.
  WindowRange window_indices(double r, double f) const;

  // Amplitudes with the realization's scale applied.
  ModeAmplitudes mode_amplitudes(const ModeId& mode) const;

  // E and B at the electron (z = 0 plane, where k.x vanishes for every
  // retained wave) at time t, summed over the window.
  EmFields fields_at(double t, const WindowRange& window) const;

 private:
  std::uint64_t seed_;
  CavityConfig cavity_;
  PhysicalConstants constants_;
  double amplitude_scale_;
  std::int64_t n_max_;
  double omega_min_;
  double volume_;
  double inv_sqrt_volume_;
  // 8 doubles per lattice index: (A,B) for (+z,x), (+z,y), (-z,x), (-z,y).
  std::vector<double> table_;
};

// Free-function form used by the dynamics module.
inline EmFields eval_fields(const FieldRealization& field, const WindowRange& window, double t) {
  return field.fields_at(t, window);
}

}  // namespace sedsim
