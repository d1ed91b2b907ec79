#include "sedsim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sedsim/ensemble.hpp"
#include "sedsim/errors.hpp"
#include "sedsim/version.hpp"
#include "sedsim/zpfield.hpp"

namespace fs = std::filesystem;

namespace sedsim::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string status_name(StopReason s) {
  switch (s) {
    case StopReason::reached_target: return "completed";
    case StopReason::collapse: return "collapse";
    case StopReason::ionization: return "ionization";
    case StopReason::stiffness: return "stiffness";
  }
  return "unknown";
}

// Subcommand-specific starting points; the config file and overrides are
// applied on top of these.
RunConfig base_config(Command cmd) {
  RunConfig cfg;
  switch (cmd) {
    case Command::run:
    case Command::fieldstats:
    case Command::dump_modes:
      break;
    case Command::decay:
      cfg.zero_field = true;
      cfg.radiation_reaction = true;
      cfg.r0 = bohr_radius(cfg.constants);
      cfg.r_min_guard = 0.12e-8;
      cfg.t_end = 2.5e-11;
      cfg.snapshot_times.clear();
      cfg.trajectory_sample_dt = 2e-14;
      cfg.checkpoint_interval = 0.0;
      break;
    case Command::kepler:
      cfg.zero_field = true;
      cfg.radiation_reaction = false;
      cfg.r0 = bohr_radius(cfg.constants);
      cfg.snapshot_times.clear();
      cfg.trajectory_sample_dt = 0.0;
      cfg.checkpoint_interval = 0.0;
      // t_end is derived from the orbit count at dispatch time
      cfg.t_end = 0.0;
      break;
    case Command::bench:
      cfg.cavity.lz = 4085e-8;
      cfg.t_end = 1e-14;
      cfg.snapshot_times.clear();
      cfg.trajectory_sample_dt = 0.0;
      cfg.checkpoint_interval = 0.0;
      cfg.progress_interval = 0.0;
      break;
  }
  return cfg;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_checkpoint_atomic(const fs::path& path, const Checkpoint& cp) {
  const fs::path tmp = path.string() + ".tmp";
  write_text_file(tmp, cp.to_json().dump());
  fs::rename(tmp, path);
}

}  // namespace

std::pair<CommandSpec, RunConfig> parse_and_validate(const std::vector<std::string>& args) {
  CLI::App app{"Classical electron in a Coulomb potential under zero-point radiation"};
  app.name("sedsim");
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string field_mode_str;
  std::vector<std::string> sets;
  std::vector<std::uint64_t> seeds_list;
  std::uint64_t seed_flag = 0;
  int runs = 0;
  double t_end_flag = 0.0;
  std::vector<double> snapshots_flag;
  int workers = 0;

  bool have_seed = false, have_t_end = false, have_snapshots = false, have_mode = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; omitted keys keep defaults");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed_flag, "base random seed")->each([&](const std::string&) {
      have_seed = true;
    });
    sub->add_option("--seeds", seeds_list, "explicit seed list")->delimiter(',');
    sub->add_option("--runs", runs, "number of runs (seeds base, base+1, ...)");
    sub->add_option("--t-end", t_end_flag, "simulation horizon [s]")->each(
        [&](const std::string&) { have_t_end = true; });
    sub->add_option("--snapshots", snapshots_flag, "snapshot times [s]")
        ->delimiter(',')
        ->each([&](const std::string&) { have_snapshots = true; });
    sub->add_option("--workers", workers, "parallel trajectory workers");
    sub->add_option("--field-mode", field_mode_str, "window|full")
        ->each([&](const std::string&) { have_mode = true; });
    sub->add_option("--set", sets, "config override key=value (repeatable, dotted paths)");
  };

  CommandSpec spec;
  spec.raw_args = args;

  auto* sub_run = app.add_subcommand("run", "trajectory campaign with histograms and snapshots");
  auto* sub_decay =
      app.add_subcommand("decay", "radiation-reaction-only decay against the analytic r^3 law");
  auto* sub_kepler =
      app.add_subcommand("kepler", "conservation check with fields and radiation reaction off");
  auto* sub_fieldstats =
      app.add_subcommand("fieldstats", "amplitude statistics of the mode generator");
  auto* sub_bench = app.add_subcommand("bench", "window vs full-summation comparison");
  auto* sub_dump = app.add_subcommand("dump-modes", "amplitude table dump as CSV on stdout");
  for (auto* sub : {sub_run, sub_decay, sub_kepler, sub_fieldstats, sub_bench, sub_dump})
    add_common(sub);
  sub_dump->add_option("--n-lo", spec.dump_n_lo, "first lattice index");
  sub_dump->add_option("--n-hi", spec.dump_n_hi, "last lattice index");
  sub_fieldstats->add_option("--samples", spec.fieldstats_samples,
                             "minimum number of sampled modes");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  if (sub_run->parsed()) spec.command = Command::run;
  else if (sub_decay->parsed()) spec.command = Command::decay;
  else if (sub_kepler->parsed()) spec.command = Command::kepler;
  else if (sub_fieldstats->parsed()) spec.command = Command::fieldstats;
  else if (sub_bench->parsed()) spec.command = Command::bench;
  else spec.command = Command::dump_modes;

  RunConfig cfg = base_config(spec.command);
  bool snapshots_explicit = false;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("config file " + config_path + " is not valid JSON: " + e.what());
    }
    cfg = RunConfig::from_json(j, cfg);
    snapshots_explicit = j.contains("snapshot_times");
  }

  if (have_seed) cfg.seed = seed_flag;
  if (have_t_end) cfg.t_end = t_end_flag;
  if (have_snapshots) {
    cfg.snapshot_times = snapshots_flag;
    snapshots_explicit = true;
  }
  if (have_mode) cfg.field_mode = field_mode_from_string(field_mode_str);

  bool t_end_overridden = have_t_end;
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("--set expects key=value, got: " + kv);
    const std::string key = kv.substr(0, eq);
    cfg.apply_override(key, kv.substr(eq + 1));
    if (key == "t_end") t_end_overridden = true;
    if (key == "snapshot_times") snapshots_explicit = true;
  }

  // A shortened horizon with the stock snapshot schedule would be rejected by
  // validation; trim the default schedule instead of bothering the user.
  if (t_end_overridden && !snapshots_explicit)
    std::erase_if(cfg.snapshot_times, [&](double t) { return t > cfg.t_end; });

  if (!seeds_list.empty()) {
    spec.seeds = seeds_list;
  } else if (runs > 0) {
    for (int i = 0; i < runs; ++i) spec.seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
  } else {
    spec.seeds = {cfg.seed};
  }
  if (runs < 0) throw ValidationError("--runs must be positive");

  spec.config_path = config_path;
  spec.out_dir = out_dir;
  spec.workers = workers;
  cfg.validate();
  return {spec, cfg};
}

namespace {

nlohmann::json manifest_json(const CommandSpec& spec, const RunConfig& cfg) {
  std::string cmdline = "sedsim";
  for (const auto& a : spec.raw_args) cmdline += " " + a;
  return {{"version", kVersion},
          {"tableau", kTableau},
          {"command", cmdline},
          {"config_source", spec.config_path.empty() ? "defaults" : spec.config_path},
          {"config", cfg.to_json()},
          {"seeds", spec.seeds},
          {"workers", spec.workers}};
}

void write_trajectory_csv(const fs::path& path, const std::vector<TrajectorySample>& samples) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "t,r\n";
  for (const auto& s : samples) out << fmt17(s.t) << ',' << fmt17(s.r) << '\n';
}

void write_histogram_csv(const fs::path& path, const RadialHistogram& hist) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "r_center,P\n";
  if (!(hist.total_time() > 0.0)) return;
  const auto table = hist.normalize();
  for (std::size_t i = 0; i < table.p.size(); ++i)
    out << fmt17(table.r_center[i]) << ',' << fmt17(table.p[i]) << '\n';
}

void write_snapshot_csv(const fs::path& path, const SnapshotReport& snap, double bohr) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << "r_center,P_sim,P_qm\n";
  for (std::size_t i = 0; i < snap.density.p.size(); ++i) {
    const double r = snap.density.r_center[i];
    out << fmt17(r) << ',' << fmt17(snap.density.p[i]) << ','
        << fmt17(qm_radial_density(r, bohr)) << '\n';
  }
}

int run_command(const CommandSpec& spec, const RunConfig& cfg) {
  const fs::path out_dir{spec.out_dir};
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  write_text_file(out_dir / "manifest.json", manifest_json(spec, cfg).dump(2) + "\n");

  const int workers =
      spec.workers > 0
          ? spec.workers
          : static_cast<int>(std::min<std::size_t>(
                spec.seeds.size(), std::max(1u, std::thread::hardware_concurrency())));

  auto hooks_factory = [&](std::uint64_t seed) {
    RunHooks hooks;
    const fs::path run_dir = out_dir / ("run_" + std::to_string(seed));
    fs::create_directories(run_dir);
    const fs::path cp_path = run_dir / "checkpoint.json";
    if (fs::exists(cp_path)) {
      std::ifstream in(cp_path);
      nlohmann::json j;
      in >> j;
      hooks.resume = Checkpoint::from_json(j);
      std::fprintf(stderr, "[seed %llu] resuming from checkpoint at t=%.6e s\n",
                   static_cast<unsigned long long>(seed), hooks.resume->state.t);
    }
    if (cfg.checkpoint_interval > 0.0)
      hooks.on_checkpoint = [cp_path](const Checkpoint& cp) {
        write_checkpoint_atomic(cp_path, cp);
      };
    if (cfg.trace_steps) {
      auto trace = std::make_shared<std::ofstream>(run_dir / "trace.csv");
      *trace << "t,x,y,vx,vy,r,dt\n";
      hooks.on_step_trace = [trace](const StepRecord& s) {
        *trace << fmt17(s.t) << ',' << fmt17(s.x) << ',' << fmt17(s.y) << ',' << fmt17(s.vx)
               << ',' << fmt17(s.vy) << ',' << fmt17(s.r) << ',' << fmt17(s.dt) << '\n';
      };
    }
    if (cfg.progress_interval > 0.0)
      hooks.on_progress = [seed](double t, double t_end, double r, double dt) {
        std::fprintf(stderr, "[seed %llu] t=%.4e / %.4e s (%5.1f%%)  r=%.4e cm  dt=%.2e s\n",
                     static_cast<unsigned long long>(seed), t, t_end,
                     t_end > 0 ? 100.0 * t / t_end : 100.0, r, dt);
      };
    return hooks;
  };

  const CampaignResult result = run_campaign(cfg, spec.seeds, workers, hooks_factory);

  const double bohr = bohr_radius(cfg.constants);
  nlohmann::json metrics;
  metrics["snapshots"] = nlohmann::json::array();
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    const auto& snap = result.snapshots[k];
    write_snapshot_csv(out_dir / ("snapshot_" + std::to_string(k + 1) + ".csv"), snap, bohr);
    metrics["snapshots"].push_back({{"index", k + 1},
                                    {"t_avg", snap.t_avg},
                                    {"l1_to_qm", snap.l1_to_qm},
                                    {"run_count", snap.run_count}});
    std::printf("snapshot %zu: t_avg=%.4e s  l1_to_qm=%.4f  (%d runs)\n", k + 1, snap.t_avg,
                snap.l1_to_qm, snap.run_count);
  }
  metrics["runs"] = nlohmann::json::array();
  bool any_event = false;
  for (const auto& run : result.runs) {
    const fs::path run_dir = out_dir / ("run_" + std::to_string(run.seed));
    write_trajectory_csv(run_dir / "trajectory.csv", run.trajectory);
    write_histogram_csv(run_dir / "histogram.csv", run.histogram);
    metrics["runs"].push_back({{"seed", run.seed},
                               {"status", status_name(run.status)},
                               {"end_time", run.end_time},
                               {"final_r", run.final_state.radius()}});
    if (!run.completed()) {
      any_event = true;
      std::fprintf(stderr, "[seed %llu] terminated early: %s at t=%.6e s\n",
                   static_cast<unsigned long long>(run.seed), status_name(run.status).c_str(),
                   run.end_time);
    }
  }
  write_text_file(out_dir / "metrics.json", metrics.dump(2) + "\n");
  return any_event ? exit_code::numerical_event : exit_code::ok;
}

}  // namespace

DecayReport decay_check(const RunConfig& config) {
  RunConfig cfg = config;
  cfg.zero_field = true;
  cfg.checkpoint_interval = 0.0;
  if (!(cfg.trajectory_sample_dt > 0.0)) cfg.trajectory_sample_dt = 2e-14;
  cfg.validate();

  const RunResult run = run_single(cfg, cfg.seed);

  // Least-squares slope of r^3 against t.
  double t_mean = 0.0, y_mean = 0.0;
  for (const auto& s : run.trajectory) {
    t_mean += s.t;
    y_mean += s.r * s.r * s.r;
  }
  const double n = static_cast<double>(run.trajectory.size());
  t_mean /= n;
  y_mean /= n;
  double num = 0.0, den = 0.0;
  for (const auto& s : run.trajectory) {
    const double dt = s.t - t_mean;
    num += dt * (s.r * s.r * s.r - y_mean);
    den += dt * dt;
  }

  DecayReport report;
  report.fitted_slope = num / den;
  const auto& k = cfg.constants;
  report.analytic_slope = -4.0 * std::pow(k.e, 4) / (k.m * k.m * k.c * k.c * k.c);
  report.relative_error =
      std::abs(report.fitted_slope - report.analytic_slope) / std::abs(report.analytic_slope);
  report.terminal_time = run.end_time;
  report.reached_floor = run.status == StopReason::collapse;
  return report;
}

KeplerReport kepler_check(const RunConfig& config, double n_orbits) {
  RunConfig cfg = config;
  cfg.zero_field = true;
  cfg.radiation_reaction = false;

  const auto& k = cfg.constants;
  const double omega = circular_frequency(cfg.r0, k);
  const double t_end = n_orbits * 2.0 * std::numbers::pi / omega;

  ParticleState state{{cfg.r0, 0.0}, {0.0, circular_speed(cfg.r0, k)}, 0.0};
  const double e0 = 0.5 * k.m * state.velocity.norm2() - k.e * k.e / state.radius();
  const double l0 = k.m * cross_z(state.position, state.velocity);

  KeplerReport report;
  report.orbits = n_orbits;
  ForceModel deriv{&k, nullptr, cfg.field_mode, cfg.window_fraction, false};
  auto observer = [&](const ParticleState&, const ParticleState& after, double) {
    const double e = 0.5 * k.m * after.velocity.norm2() - k.e * k.e / after.radius();
    const double l = k.m * cross_z(after.position, after.velocity);
    report.max_energy_drift = std::max(report.max_energy_drift, std::abs((e - e0) / e0));
    report.max_momentum_drift = std::max(report.max_momentum_drift, std::abs((l - l0) / l0));
  };
  const GuardLimits guards{cfg.r_min_guard, cfg.r_max_guard};
  const AdvanceOutcome out = advance(state, t_end, deriv, cfg.integrator, guards, observer);
  if (out.event) throw std::runtime_error("kepler check terminated early: " +
                                          status_name(out.event->kind));
  return report;
}

FieldStatsReport field_statistics(const RunConfig& config, std::size_t min_samples) {
  const auto& k = config.constants;
  const std::int64_t n_max = max_mode_index(config.cavity, k);
  FieldStatsReport report;
  double sum_a = 0.0, sum_a2 = 0.0, sum_b = 0.0, sum_b2 = 0.0;
  std::size_t count = 0;
  for (std::int64_t n = 1; n <= n_max && count < min_samples; ++n) {
    const double omega = mode_frequency(n, config.cavity, k);
    const double sigma = std::sqrt(2.0 * std::numbers::pi * k.hbar * omega);
    for (WaveDirection dir : {WaveDirection::plus_z, WaveDirection::minus_z}) {
      for (Polarization pol : {Polarization::x, Polarization::y}) {
        const ModeAmplitudes amp = amplitudes(config.seed, {n, dir, pol}, config.cavity, k);
        sum_a += amp.a / sigma;
        sum_a2 += (amp.a / sigma) * (amp.a / sigma);
        sum_b += amp.b / sigma;
        sum_b2 += (amp.b / sigma) * (amp.b / sigma);
        ++count;
      }
    }
  }
  const double n = static_cast<double>(count);
  const double mean_a = sum_a / n;
  const double mean_b = sum_b / n;
  report.samples = count;
  report.variance_ratio_a = (sum_a2 / n - mean_a * mean_a) * n / (n - 1.0);
  report.variance_ratio_b = (sum_b2 / n - mean_b * mean_b) * n / (n - 1.0);
  report.mean_z_a = mean_a * std::sqrt(n);
  report.mean_z_b = mean_b * std::sqrt(n);
  return report;
}

BenchReport bench_window_vs_full(const RunConfig& config) {
  RunConfig cfg = config;
  cfg.checkpoint_interval = 0.0;
  cfg.progress_interval = 0.0;
  cfg.trajectory_sample_dt = 0.0;
  cfg.validate();

  std::optional<FieldRealization> field;
  if (!cfg.zero_field) field.emplace(cfg.seed, cfg.cavity, cfg.constants);

  constexpr int kMarks = 200;
  struct Track {
    std::vector<double> r;
    std::vector<Vec2> pos;
    std::vector<double> r_energy;  // -e^2/(2E), the epicycle-free orbit radius
    double r_mean = 0.0;
    double wall = 0.0;
  };
  const auto& k = cfg.constants;
  auto run_mode = [&](FieldMode mode) {
    Track track;
    ForceModel deriv{&k, field ? &*field : nullptr, mode, cfg.window_fraction,
                     cfg.radiation_reaction};
    ParticleState state{{cfg.r0, 0.0}, {0.0, circular_speed(cfg.r0, k)}, 0.0};
    const GuardLimits guards{cfg.r_min_guard, cfg.r_max_guard};
    double dt_hint = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (int i = 1; i <= kMarks; ++i) {
      const double target = cfg.t_end * static_cast<double>(i) / kMarks;
      const AdvanceOutcome out =
          advance(state, target, deriv, cfg.integrator, guards, detail::NullObserver{}, dt_hint);
      if (out.event)
        throw std::runtime_error("bench trajectory terminated early: " +
                                 status_name(out.event->kind));
      state = out.state;
      dt_hint = out.dt_next;
      track.r.push_back(state.radius());
      track.pos.push_back(state.position);
      const double energy = 0.5 * k.m * state.velocity.norm2() - k.e * k.e / state.radius();
      track.r_energy.push_back(energy < 0.0 ? -k.e * k.e / (2.0 * energy) : 0.0);
      track.r_mean += state.radius();
    }
    track.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    track.r_mean /= kMarks;
    return track;
  };

  const Track full = run_mode(FieldMode::full);
  const Track window = run_mode(FieldMode::window);

  BenchReport report;
  report.r0 = cfg.r0;
  report.wall_full = full.wall;
  report.wall_window = window.wall;
  report.speedup = window.wall > 0.0 ? full.wall / window.wall : 0.0;
  for (int i = 0; i < kMarks; ++i) {
    report.max_radial_deviation =
        std::max(report.max_radial_deviation, std::abs(full.r[i] - window.r[i]));
    report.max_position_deviation =
        std::max(report.max_position_deviation, (full.pos[i] - window.pos[i]).norm());
    report.max_energy_radius_deviation = std::max(
        report.max_energy_radius_deviation, std::abs(full.r_energy[i] - window.r_energy[i]));
  }
  report.mean_radius_deviation = std::abs(full.r_mean - window.r_mean);
  return report;
}

namespace {

int decay_command(const RunConfig& cfg) {
  const DecayReport report = decay_check(cfg);
  std::printf("fitted d(r^3)/dt   = %.6e cm^3/s\n", report.fitted_slope);
  std::printf("analytic -4e^4/m^2c^3 = %.6e cm^3/s\n", report.analytic_slope);
  std::printf("relative error     = %.4f%%\n", 100.0 * report.relative_error);
  std::printf("terminal time      = %.6e s (floor %s)\n", report.terminal_time,
              report.reached_floor ? "reached" : "not reached");
  const bool ok = report.relative_error < 0.01 && report.reached_floor;
  std::printf("decay check: %s\n", ok ? "PASS" : "FAIL");
  return ok ? exit_code::ok : exit_code::check_failed;
}

int kepler_command(const RunConfig& cfg) {
  const KeplerReport report = kepler_check(cfg);
  std::printf("orbits             = %.0f\n", report.orbits);
  std::printf("max energy drift   = %.3e (relative)\n", report.max_energy_drift);
  std::printf("max ang.mom. drift = %.3e (relative)\n", report.max_momentum_drift);
  const bool ok = report.max_energy_drift < 1e-8 && report.max_momentum_drift < 1e-8;
  std::printf("kepler check: %s\n", ok ? "PASS" : "FAIL");
  return ok ? exit_code::ok : exit_code::check_failed;
}

int fieldstats_command(const CommandSpec& spec, const RunConfig& cfg) {
  const FieldStatsReport report = field_statistics(cfg, spec.fieldstats_samples);
  std::printf("samples            = %zu\n", report.samples);
  std::printf("<A^2> / 2 pi hbar w = %.5f\n", report.variance_ratio_a);
  std::printf("<B^2> / 2 pi hbar w = %.5f\n", report.variance_ratio_b);
  std::printf("mean(A)/sigma * sqrt(N) = %+.3f\n", report.mean_z_a);
  std::printf("mean(B)/sigma * sqrt(N) = %+.3f\n", report.mean_z_b);
  const bool ok = report.variance_ratio_a > 0.97 && report.variance_ratio_a < 1.03 &&
                  report.variance_ratio_b > 0.97 && report.variance_ratio_b < 1.03 &&
                  std::abs(report.mean_z_a) <= 3.0 && std::abs(report.mean_z_b) <= 3.0;
  std::printf("fieldstats check: %s\n", ok ? "PASS" : "FAIL");
  return ok ? exit_code::ok : exit_code::check_failed;
}

int bench_command(const RunConfig& cfg) {
  const BenchReport report = bench_window_vs_full(cfg);
  std::printf("wall time full     = %.3f s\n", report.wall_full);
  std::printf("wall time window   = %.3f s\n", report.wall_window);
  std::printf("speedup            = %.1fx\n", report.speedup);
  std::printf("max |r_full - r_window|     = %.3e cm (%.4f%% of r0)\n",
              report.max_radial_deviation, 100.0 * report.max_radial_deviation / report.r0);
  std::printf("max |pos_full - pos_window| = %.3e cm\n", report.max_position_deviation);
  std::printf("max orbit-radius (energy) deviation = %.3e cm (%.4f%% of r0)\n",
              report.max_energy_radius_deviation,
              100.0 * report.max_energy_radius_deviation / report.r0);
  std::printf("mean-radius deviation       = %.3e cm (%.4f%% of r0)\n",
              report.mean_radius_deviation, 100.0 * report.mean_radius_deviation / report.r0);
  return exit_code::ok;
}

int dump_modes_command(const CommandSpec& spec, const RunConfig& cfg) {
  const std::int64_t n_max = max_mode_index(cfg.cavity, cfg.constants);
  const std::int64_t lo = std::max<std::int64_t>(1, spec.dump_n_lo);
  const std::int64_t hi = std::min(n_max, spec.dump_n_hi);
  if (lo > hi) throw ValidationError("dump-modes: empty index range after clamping to n_max");
  std::printf("n,direction,polarization,omega,A,B\n");
  for (std::int64_t n = lo; n <= hi; ++n) {
    const double omega = mode_frequency(n, cfg.cavity, cfg.constants);
    for (WaveDirection dir : {WaveDirection::plus_z, WaveDirection::minus_z}) {
      for (Polarization pol : {Polarization::x, Polarization::y}) {
        const ModeAmplitudes amp = amplitudes(cfg.seed, {n, dir, pol}, cfg.cavity, cfg.constants);
        std::printf("%lld,%s,%s,%s,%s,%s\n", static_cast<long long>(n),
                    dir == WaveDirection::plus_z ? "+z" : "-z",
                    pol == Polarization::x ? "x" : "y", fmt17(omega).c_str(),
                    fmt17(amp.a).c_str(), fmt17(amp.b).c_str());
      }
    }
  }
  return exit_code::ok;
}

}  // namespace

int dispatch(const CommandSpec& spec, const RunConfig& config) {
  switch (spec.command) {
    case Command::run: return run_command(spec, config);
    case Command::decay: return decay_command(config);
    case Command::kepler: return kepler_command(config);
    case Command::fieldstats: return fieldstats_command(spec, config);
    case Command::bench: return bench_command(config);
    case Command::dump_modes: return dump_modes_command(spec, config);
  }
  return exit_code::validation;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 1 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const auto [spec, cfg] = parse_and_validate(args);
    return dispatch(spec, cfg);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return exit_code::ok;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::validation;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return exit_code::io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::check_failed;
  }
}

}  // namespace sedsim::cli
