#include "sedsim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <optional>
#include <set>
#include <thread>

#include "sedsim/errors.hpp"

namespace sedsim {

namespace {

nlohmann::json histogram_to_json(const RadialHistogram& h) {
  return {{"bin_width", h.bin_width()},
          {"r_max", h.r_max()},
          {"weights", h.weights()},
          {"total_time", h.total_time()},
          {"out_of_range_time", h.out_of_range_time()}};
}

RadialHistogram histogram_from_json(const nlohmann::json& j) {
  return RadialHistogram::restore(j.at("bin_width"), j.at("r_max"),
                                  j.at("weights").get<std::vector<double>>(), j.at("total_time"),
                                  j.at("out_of_range_time"));
}

nlohmann::json state_to_json(const ParticleState& s) {
  return {{"t", s.t}, {"x", s.position.x}, {"y", s.position.y},
          {"vx", s.velocity.x}, {"vy", s.velocity.y}};
}

ParticleState state_from_json(const nlohmann::json& j) {
  return {{j.at("x"), j.at("y")}, {j.at("vx"), j.at("vy")}, j.at("t")};
}

}  // namespace

std::string physics_signature(const RunConfig& config) {
  // Everything that shapes the trajectory itself. Horizon and snapshot
  // schedule are deliberately left out so a run can be extended.
  nlohmann::json j = config.to_json();
  j.erase("t_end");
  j.erase("snapshot_times");
  j.erase("trace_steps");
  j.erase("progress_interval");
  return j.dump();
}

nlohmann::json Checkpoint::to_json() const {
  nlohmann::json snaps = nlohmann::json::array();
  for (const auto& h : snapshot_histograms) snaps.push_back(histogram_to_json(h));
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : trajectory) samples.push_back({s.t, s.r});
  return {{"seed", seed},
          {"state", state_to_json(state)},
          {"dt_next", dt_next},
          {"next_sample_t", next_sample_t},
          {"next_checkpoint_t", next_checkpoint_t},
          {"histogram", histogram_to_json(histogram)},
          {"snapshot_histograms", snaps},
          {"snapshot_end_times", snapshot_end_times},
          {"trajectory", samples},
          {"physics_signature", physics_signature}};
}

Checkpoint Checkpoint::from_json(const nlohmann::json& j) {
  Checkpoint cp;
  cp.seed = j.at("seed");
  cp.state = state_from_json(j.at("state"));
  cp.dt_next = j.at("dt_next");
  cp.next_sample_t = j.at("next_sample_t");
  cp.next_checkpoint_t = j.at("next_checkpoint_t");
  cp.histogram = histogram_from_json(j.at("histogram"));
  for (const auto& h : j.at("snapshot_histograms")) cp.snapshot_histograms.push_back(histogram_from_json(h));
  cp.snapshot_end_times = j.at("snapshot_end_times").get<std::vector<double>>();
  for (const auto& s : j.at("trajectory")) cp.trajectory.push_back({s.at(0), s.at(1)});
  cp.physics_signature = j.at("physics_signature");
  return cp;
}

RunResult run_single(const RunConfig& config, std::uint64_t seed, const RunHooks* hooks) {
  const std::string signature = physics_signature(config);

  std::optional<FieldRealization> field;
  if (!config.zero_field) field.emplace(seed, config.cavity, config.constants);

  ForceModel deriv{&config.constants, field ? &*field : nullptr, config.field_mode,
                   config.window_fraction, config.radiation_reaction};

  RunResult result;
  result.seed = seed;
  result.histogram = RadialHistogram(config.histogram.bin_width, config.histogram.r_max);

  // Fresh start: circular-orbit velocity, tangential, counterclockwise, from
  // the x axis. The initial phase and speed are not observable in the radial
  // density, but they make the orbit near-circular from t = 0.
  ParticleState state{{config.r0, 0.0}, {0.0, circular_speed(config.r0, config.constants)}, 0.0};
  double dt_hint = 0.0;
  double next_sample_t = 0.0;
  double next_checkpoint_t = config.checkpoint_interval;

  if (hooks && hooks->resume) {
    const Checkpoint& cp = *hooks->resume;
    if (cp.seed != seed) throw ValidationError("checkpoint seed does not match run seed");
    if (cp.physics_signature != signature)
      throw ValidationError("checkpoint was produced under a different physics configuration");
    state = cp.state;
    dt_hint = cp.dt_next;
    next_sample_t = cp.next_sample_t;
    next_checkpoint_t = cp.next_checkpoint_t;
    result.histogram = cp.histogram;
    result.snapshot_histograms = cp.snapshot_histograms;
    result.snapshot_end_times = cp.snapshot_end_times;
    result.trajectory = cp.trajectory;
  } else if (config.trajectory_sample_dt > 0.0) {
    result.trajectory.push_back({state.t, state.radius()});
    next_sample_t = config.trajectory_sample_dt;
  }

  const GuardLimits guards{config.r_min_guard, config.r_max_guard};

  // Per-step bookkeeping.
  const auto wall_start = std::chrono::steady_clock::now();
  auto last_progress = wall_start;
  std::uint64_t steps_since_poll = 0;
  auto observer = [&](const ParticleState& before, const ParticleState& after, double dt) {
    const double r_mid = 0.5 * (before.radius() + after.radius());
    result.histogram.accumulate(r_mid, dt);
    if (config.trajectory_sample_dt > 0.0 && after.t >= next_sample_t) {
      result.trajectory.push_back({after.t, after.radius()});
      while (next_sample_t <= after.t) next_sample_t += config.trajectory_sample_dt;
    }
    if (hooks && hooks->on_step_trace)
      hooks->on_step_trace({after.t, after.position.x, after.position.y, after.velocity.x,
                            after.velocity.y, after.radius(), dt});
    if (hooks && hooks->on_progress && config.progress_interval > 0.0 &&
        ++steps_since_poll >= 512) {
      steps_since_poll = 0;
      const auto now = std::chrono::steady_clock::now();
      if (std::chrono::duration<double>(now - last_progress).count() >= config.progress_interval) {
        last_progress = now;
        hooks->on_progress(after.t, config.t_end, after.radius(), dt);
      }
    }
  };

  auto record_due_snapshots = [&](double now) {
    while (result.snapshot_histograms.size() < config.snapshot_times.size() &&
           config.snapshot_times[result.snapshot_histograms.size()] <= now) {
      result.snapshot_histograms.push_back(result.histogram);
      result.snapshot_end_times.push_back(
          std::min(state.t, config.snapshot_times[result.snapshot_histograms.size() - 1]));
    }
  };

  // Segment boundaries: snapshot times, checkpoint marks, and the horizon.
  // Landing on them exactly keeps resumed runs on the uninterrupted step
  // sequence.
  std::set<double> marks;
  for (double t : config.snapshot_times)
    if (t > state.t) marks.insert(t);
  if (config.checkpoint_interval > 0.0)
    for (double t = next_checkpoint_t; t < config.t_end; t += config.checkpoint_interval)
      marks.insert(t);
  marks.insert(config.t_end);

  record_due_snapshots(state.t);

  std::optional<TrajectoryEvent> event;
  for (double mark : marks) {
    if (mark <= state.t) continue;
    AdvanceOutcome out =
        advance(state, mark, deriv, config.integrator, guards, observer, dt_hint);
    state = out.state;
    dt_hint = out.dt_next;
    if (out.event) {
      event = out.event;
      break;
    }
    record_due_snapshots(state.t);
    if (config.checkpoint_interval > 0.0 && state.t >= next_checkpoint_t) {
      while (next_checkpoint_t <= state.t) next_checkpoint_t += config.checkpoint_interval;
      if (hooks && hooks->on_checkpoint && state.t < config.t_end) {
        Checkpoint cp;
        cp.seed = seed;
        cp.state = state;
        cp.dt_next = dt_hint;
        cp.next_sample_t = next_sample_t;
        cp.next_checkpoint_t = next_checkpoint_t;
        cp.histogram = result.histogram;
        cp.snapshot_histograms = result.snapshot_histograms;
        cp.snapshot_end_times = result.snapshot_end_times;
        cp.trajectory = result.trajectory;
        cp.physics_signature = signature;
        hooks->on_checkpoint(cp);
      }
    }
  }

  if (event) {
    result.status = event->kind;
    result.end_time = event->t;
    // Terminated runs keep contributing what they accumulated; later
    // snapshots freeze at the termination state.
    while (result.snapshot_histograms.size() < config.snapshot_times.size()) {
      result.snapshot_histograms.push_back(result.histogram);
      result.snapshot_end_times.push_back(event->t);
    }
  } else {
    result.status = StopReason::reached_target;
    result.end_time = state.t;
  }
  result.final_state = state;
  return result;
}

std::vector<SnapshotReport> merge_snapshots(const RunConfig& config,
                                            const std::vector<RunResult>& runs) {
  std::vector<SnapshotReport> reports;
  const double bohr = bohr_radius(config.constants);
  for (std::size_t k = 0; k < config.snapshot_times.size(); ++k) {
    RadialHistogram merged(config.histogram.bin_width, config.histogram.r_max);
    double t_sum = 0.0;
    int count = 0;
    for (const auto& run : runs) {
      if (k >= run.snapshot_histograms.size()) continue;
      merged.merge(run.snapshot_histograms[k]);
      t_sum += run.snapshot_end_times[k];
      ++count;
    }
    if (count == 0 || !(merged.total_time() > 0.0)) continue;  // nothing accumulated yet
    SnapshotReport report;
    report.t_avg = t_sum / count;
    report.density = merged.normalize();
    report.l1_to_qm = l1_distance_to_qm(report.density, bohr);
    report.run_count = count;
    reports.push_back(std::move(report));
  }
  return reports;
}

CampaignResult run_campaign(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                            int worker_count, const RunHooksFactory& hooks_factory) {
  config.validate();
  if (seeds.empty()) throw ValidationError("seeds list must not be empty");
  {
    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) throw ValidationError("seeds must be distinct");
  }

  CampaignResult result;
  result.runs.resize(seeds.size());

  const auto run_one = [&](std::size_t i) {
    RunHooks hooks;
    if (hooks_factory) hooks = hooks_factory(seeds[i]);
    result.runs[i] = run_single(config, seeds[i], &hooks);
  };

  const int workers = std::clamp<int>(worker_count, 1, static_cast<int>(seeds.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < seeds.size(); i = next++) run_one(i);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  result.snapshots = merge_snapshots(config, result.runs);
  return result;
}

}  // namespace sedsim
