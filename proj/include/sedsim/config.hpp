#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sedsim/constants.hpp"

namespace sedsim {

// Rectilinear cavity; only waves running along +z/-z are kept, so L_z sets
// the frequency lattice spacing and r_cutoff sets the top of the band.
struct CavityConfig {
  double lx = 37.4e-8;     // [cm]
  double ly = 37.4e-8;     // [cm]
  double lz = 0.4085;      // [cm]
  double r_cutoff = 1e-9;  // smallest resolved circular-orbit radius [cm]

  double volume() const { return lx * ly * lz; }
  // Lattice spacing 2 pi c / L_z; also the lowest retained frequency.
  double omega_min(const PhysicalConstants& k) const;
  // Circular-orbit frequency at r_cutoff; modes above it are dropped.
  double omega_max(const PhysicalConstants& k) const;

  void validate(const PhysicalConstants& k) const;
};

// Defaults resolve the fastest retained field frequency with plenty of steps
// and hold the relative energy drift of a bare Kepler orbit below 1e-8 over
// 100 periods. The absolute tolerances are the relative one scaled by the
// Bohr radius and by the circular-orbit speed there.
struct IntegratorConfig {
  double rel_tol = 1e-12;
  double abs_tol_pos = 5.3e-21;  // [cm]
  double abs_tol_vel = 2.2e-4;   // [cm/s]
  double dt_init = 1e-18;        // [s]
  double dt_min = 1e-22;         // [s]
  double dt_max = 1e-14;         // [s]
  double safety = 0.9;
  int max_rejects = 50;

  void validate() const;
};

struct HistogramConfig {
  double bin_width = 1e-10;  // 0.01 Angstrom [cm]
  double r_max = 5e-8;       // 5 Angstrom [cm]

  void validate() const;
};

enum class FieldMode { window, full };

std::string to_string(FieldMode mode);
FieldMode field_mode_from_string(const std::string& s);

struct RunConfig {
  PhysicalConstants constants;
  CavityConfig cavity;
  double window_fraction = 0.03;
  FieldMode field_mode = FieldMode::window;
  std::uint64_t seed = 1;
  double r0 = 0.53e-8;    // initial radius [cm]
  double t_end = 7.252e-12;
  std::vector<double> snapshot_times = {1.417e-12, 4.500e-12, 5.705e-12, 7.252e-12};
  IntegratorConfig integrator;
  HistogramConfig histogram;
  double r_min_guard = 0.05e-8;  // [cm]
  double r_max_guard = 500e-8;   // [cm]

  // Diagnostics and run management.
  bool zero_field = false;          // drop the radiation field entirely (test hook)
  bool radiation_reaction = true;   // disable for pure-Kepler checks
  double trajectory_sample_dt = 1e-15;  // r(t) sampling interval [s]; 0 disables
  bool trace_steps = false;             // per-step CSV trace (large, off by default)
  double checkpoint_interval = 1e-12;   // simulated seconds between checkpoints; 0 disables
  double progress_interval = 10.0;      // wall seconds between progress lines; 0 disables

  void validate() const;  // throws ValidationError naming the offending key

  // JSON round trip. Keys missing from the document keep the values of
  // `base`, which defaults to the paper-style setup above.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_json(const nlohmann::json& j, RunConfig base);
  nlohmann::json to_json() const;

  static RunConfig load_file(const std::string& path);

  // Applies a dotted-path override such as "integrator.rel_tol=1e-10".
  // The value is parsed as JSON when possible and as a string otherwise.
  void apply_override(const std::string& key, const std::string& value);
};

}  // namespace sedsim
