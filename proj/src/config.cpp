#include "sedsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "sedsim/errors.hpp"

namespace sedsim {

double CavityConfig::omega_min(const PhysicalConstants& k) const {
  return 2.0 * std::numbers::pi * k.c / lz;
}

double CavityConfig::omega_max(const PhysicalConstants& k) const {
  return circular_frequency(r_cutoff, k);
}

void CavityConfig::validate(const PhysicalConstants& k) const {
  if (!(lx > 0.0)) throw ValidationError("cavity.lx must be positive");
  if (!(ly > 0.0)) throw ValidationError("cavity.ly must be positive");
  if (!(lz >= lx) || !(lz >= ly))
    throw ValidationError("cavity.lz must be the longest edge (lz >= lx, lz >= ly)");
  if (!(r_cutoff > 0.0)) throw ValidationError("cavity.r_cutoff must be positive");
  if (!(omega_max(k) > omega_min(k)))
    throw ValidationError("cavity.r_cutoff leaves no modes: omega_max must exceed omega_min");
}

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0)) throw ValidationError("integrator.rel_tol must be positive");
  if (!(abs_tol_pos > 0.0)) throw ValidationError("integrator.abs_tol_pos must be positive");
  if (!(abs_tol_vel > 0.0)) throw ValidationError("integrator.abs_tol_vel must be positive");
  if (!(dt_min > 0.0) || !(dt_min <= dt_init) || !(dt_init <= dt_max))
    throw ValidationError("integrator step bounds must satisfy 0 < dt_min <= dt_init <= dt_max");
  if (!(safety > 0.0) || !(safety < 1.0))
    throw ValidationError("integrator.safety must lie in (0, 1)");
  if (max_rejects < 1) throw ValidationError("integrator.max_rejects must be >= 1");
}

void HistogramConfig::validate() const {
  if (!(bin_width > 0.0)) throw ValidationError("histogram.bin_width must be positive");
  if (!(r_max > bin_width)) throw ValidationError("histogram.r_max must exceed bin_width");
}

std::string to_string(FieldMode mode) { return mode == FieldMode::window ? "window" : "full"; }

FieldMode field_mode_from_string(const std::string& s) {
  if (s == "window") return FieldMode::window;
  if (s == "full") return FieldMode::full;
  throw ValidationError("field_mode must be \"window\" or \"full\"");
}

void RunConfig::validate() const {
  constants.validate();
  cavity.validate(constants);
  integrator.validate();
  histogram.validate();
  if (!(window_fraction >= 0.0) || !(window_fraction < 1.0))
    throw ValidationError("window_fraction must lie in [0, 1)");
  if (!(r0 > 0.0)) throw ValidationError("r0 must be positive");
  if (!(r_min_guard > 0.0)) throw ValidationError("r_min_guard must be positive");
  if (!(r_min_guard < r0) || !(r0 < r_max_guard))
    throw ValidationError("initial radius must satisfy r_min_guard < r0 < r_max_guard");
  if (!(t_end >= 0.0)) throw ValidationError("t_end must be non-negative");
  if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
    throw ValidationError("snapshot_times must be sorted ascending");
  for (double t : snapshot_times) {
    if (!(t >= 0.0) || !(t <= t_end))
      throw ValidationError("snapshot_times entries must lie in [0, t_end]");
  }
  if (!(trajectory_sample_dt >= 0.0))
    throw ValidationError("trajectory_sample_dt must be non-negative");
  if (!(checkpoint_interval >= 0.0))
    throw ValidationError("checkpoint_interval must be non-negative");
  if (!(progress_interval >= 0.0)) throw ValidationError("progress_interval must be non-negative");
}

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) { return from_json(j, RunConfig{}); }

RunConfig RunConfig::from_json(const nlohmann::json& j, RunConfig base) {
  RunConfig cfg = std::move(base);
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    read(c, "e", cfg.constants.e);
    read(c, "m", cfg.constants.m);
    read(c, "c", cfg.constants.c);
    read(c, "hbar", cfg.constants.hbar);
  }
  if (j.contains("cavity")) {
    const auto& c = j.at("cavity");
    read(c, "lx", cfg.cavity.lx);
    read(c, "ly", cfg.cavity.ly);
    read(c, "lz", cfg.cavity.lz);
    read(c, "r_cutoff", cfg.cavity.r_cutoff);
  }
  if (j.contains("integrator")) {
    const auto& c = j.at("integrator");
    read(c, "rel_tol", cfg.integrator.rel_tol);
    read(c, "abs_tol_pos", cfg.integrator.abs_tol_pos);
    read(c, "abs_tol_vel", cfg.integrator.abs_tol_vel);
    read(c, "dt_init", cfg.integrator.dt_init);
    read(c, "dt_min", cfg.integrator.dt_min);
    read(c, "dt_max", cfg.integrator.dt_max);
    read(c, "safety", cfg.integrator.safety);
    read(c, "max_rejects", cfg.integrator.max_rejects);
  }
  if (j.contains("histogram")) {
    const auto& c = j.at("histogram");
    read(c, "bin_width", cfg.histogram.bin_width);
    read(c, "r_max", cfg.histogram.r_max);
  }
  read(j, "window_fraction", cfg.window_fraction);
  if (j.contains("field_mode")) cfg.field_mode = field_mode_from_string(j.at("field_mode"));
  read(j, "seed", cfg.seed);
  read(j, "r0", cfg.r0);
  read(j, "t_end", cfg.t_end);
  read(j, "snapshot_times", cfg.snapshot_times);
  read(j, "r_min_guard", cfg.r_min_guard);
  read(j, "r_max_guard", cfg.r_max_guard);
  read(j, "zero_field", cfg.zero_field);
  read(j, "radiation_reaction", cfg.radiation_reaction);
  read(j, "trajectory_sample_dt", cfg.trajectory_sample_dt);
  read(j, "trace_steps", cfg.trace_steps);
  read(j, "checkpoint_interval", cfg.checkpoint_interval);
  read(j, "progress_interval", cfg.progress_interval);
  return cfg;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["constants"] = {{"e", constants.e}, {"m", constants.m}, {"c", constants.c},
                    {"hbar", constants.hbar}};
  j["cavity"] = {{"lx", cavity.lx}, {"ly", cavity.ly}, {"lz", cavity.lz},
                 {"r_cutoff", cavity.r_cutoff}};
  j["window_fraction"] = window_fraction;
  j["field_mode"] = to_string(field_mode);
  j["seed"] = seed;
  j["r0"] = r0;
  j["t_end"] = t_end;
  j["snapshot_times"] = snapshot_times;
  j["integrator"] = {{"rel_tol", integrator.rel_tol},
                     {"abs_tol_pos", integrator.abs_tol_pos},
                     {"abs_tol_vel", integrator.abs_tol_vel},
                     {"dt_init", integrator.dt_init},
                     {"dt_min", integrator.dt_min},
                     {"dt_max", integrator.dt_max},
                     {"safety", integrator.safety},
                     {"max_rejects", integrator.max_rejects}};
  j["histogram"] = {{"bin_width", histogram.bin_width}, {"r_max", histogram.r_max}};
  j["r_min_guard"] = r_min_guard;
  j["r_max_guard"] = r_max_guard;
  j["zero_field"] = zero_field;
  j["radiation_reaction"] = radiation_reaction;
  j["trajectory_sample_dt"] = trajectory_sample_dt;
  j["trace_steps"] = trace_steps;
  j["checkpoint_interval"] = checkpoint_interval;
  j["progress_interval"] = progress_interval;
  return j;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file " + path + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void RunConfig::apply_override(const std::string& key, const std::string& value) {
  nlohmann::json j = to_json();
  nlohmann::json* node = &j;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ValidationError("override key has an empty path segment: " + key);
    if (dot == std::string::npos) {
      nlohmann::json parsed;
      try {
        parsed = nlohmann::json::parse(value);
      } catch (const nlohmann::json::exception&) {
        parsed = value;  // plain string (e.g. field_mode=window)
      }
      (*node)[part] = parsed;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
  *this = from_json(j);
}

}  // namespace sedsim
