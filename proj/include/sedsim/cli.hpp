#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sedsim/config.hpp"

namespace sedsim::cli {

enum class Command { run, decay, kepler, fieldstats, bench, dump_modes };

struct CommandSpec {
  Command command = Command::run;
  std::string config_path;
  std::string out_dir = "out";
  int workers = 0;  // 0: one per run, capped at hardware concurrency
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> raw_args;  // recorded in the manifest
  // dump-modes index range (inclusive)
  std::int64_t dump_n_lo = 1;
  std::int64_t dump_n_hi = 1000;
  std::size_t fieldstats_samples = 100000;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int validation = 2;
inline constexpr int numerical_event = 3;
inline constexpr int io = 4;
}  // namespace exit_code

// Thrown when --help is requested; run_main turns it into exit 0.
struct HelpRequested {
  std::string text;
};

// Builds the effective configuration: subcommand base defaults, then the
// config file, then --set overrides and flag shortcuts (overrides win).
// Throws ValidationError / IoError on anything inconsistent.
std::pair<CommandSpec, RunConfig> parse_and_validate(const std::vector<std::string>& args);

struct BenchReport {
  double wall_full = 0.0;
  double wall_window = 0.0;
  double speedup = 0.0;
  double max_radial_deviation = 0.0;    // [cm] pointwise |r_full - r_window|
  double max_position_deviation = 0.0;  // [cm]
  // Secular diagnostics: the energy-derived orbit radius -e^2/(2E) ignores
  // the fast epicyclic wiggles, and the running mean compares residence.
  double max_energy_radius_deviation = 0.0;  // [cm]
  double mean_radius_deviation = 0.0;        // [cm]
  double r0 = 0.0;
};

// Same seed integrated under field_mode=full and field_mode=window over the
// configured horizon; reports wall-time ratio and trajectory deviations.
BenchReport bench_window_vs_full(const RunConfig& config);

struct DecayReport {
  double fitted_slope = 0.0;    // d(r^3)/dt from least squares [cm^3/s]
  double analytic_slope = 0.0;  // -4 e^4 / (m^2 c^3)
  double relative_error = 0.0;
  double terminal_time = 0.0;   // time at which r crossed r_min_guard
  bool reached_floor = false;
};
DecayReport decay_check(const RunConfig& config);

struct KeplerReport {
  double max_energy_drift = 0.0;   // relative
  double max_momentum_drift = 0.0; // relative
  double orbits = 0.0;
};
KeplerReport kepler_check(const RunConfig& config, double n_orbits = 100.0);

struct FieldStatsReport {
  std::size_t samples = 0;
  double variance_ratio_a = 0.0;  // sample variance over 2 pi hbar omega
  double variance_ratio_b = 0.0;
  double mean_z_a = 0.0;  // mean in units of sigma / sqrt(N)
  double mean_z_b = 0.0;
};
FieldStatsReport field_statistics(const RunConfig& config, std::size_t min_samples);

int dispatch(const CommandSpec& spec, const RunConfig& config);
int run_main(int argc, char** argv);

}  // namespace sedsim::cli
