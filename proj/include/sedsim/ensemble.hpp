#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sedsim/config.hpp"
#include "sedsim/dynamics.hpp"
#include "sedsim/histogram.hpp"
#include "sedsim/integrator.hpp"

namespace sedsim {

struct TrajectorySample {
  double t = 0.0;
  double r = 0.0;
};

// Serializable mid-run snapshot: everything needed to continue a run exactly
// where it stopped. JSON doubles round-trip losslessly, so a resumed run
// reproduces the uninterrupted trajectory bit for bit.
struct Checkpoint {
  std::uint64_t seed = 0;
  ParticleState state;
  double dt_next = 0.0;
  double next_sample_t = 0.0;
  double next_checkpoint_t = 0.0;
  RadialHistogram histogram;
  std::vector<RadialHistogram> snapshot_histograms;  // for snapshot times already passed
  std::vector<double> snapshot_end_times;
  std::vector<TrajectorySample> trajectory;
  std::string physics_signature;  // config subset that must match to resume

  nlohmann::json to_json() const;
  static Checkpoint from_json(const nlohmann::json& j);
};

// Config subset whose change invalidates a checkpoint (t_end and snapshot
// schedule may be extended freely).
std::string physics_signature(const RunConfig& config);

struct RunResult {
  std::uint64_t seed = 0;
  ParticleState final_state;
  StopReason status = StopReason::reached_target;
  double end_time = 0.0;
  RadialHistogram histogram;
  std::vector<RadialHistogram> snapshot_histograms;
  std::vector<double> snapshot_end_times;  // min(snapshot time, end of run)
  std::vector<TrajectorySample> trajectory;

  bool completed() const { return status == StopReason::reached_target; }
};

struct StepRecord {
  double t, x, y, vx, vy, r, dt;
};

// Optional per-run callbacks; all may be left empty.
struct RunHooks {
  std::function<void(const Checkpoint&)> on_checkpoint;
  std::function<void(const StepRecord&)> on_step_trace;
  // simulated t, t_end, radius, current dt
  std::function<void(double, double, double, double)> on_progress;
  std::optional<Checkpoint> resume;
};

// Advances one seed from (r0, 0) with tangential circular-orbit velocity to
// t_end, accumulating the residence-time histogram and per-snapshot copies.
// Guard violations and stiffness end the run early; they are reported in the
// result, never thrown.
RunResult run_single(const RunConfig& config, std::uint64_t seed, const RunHooks* hooks = nullptr);

struct SnapshotReport {
  double t_avg = 0.0;  // mean trajectory end time across runs, capped at the snapshot
  RadialHistogram::DensityTable density;
  double l1_to_qm = 0.0;
  int run_count = 0;
};

struct CampaignResult {
  std::vector<RunResult> runs;          // in seed-list order
  std::vector<SnapshotReport> snapshots;
};

using RunHooksFactory = std::function<RunHooks(std::uint64_t seed)>;

// Runs every seed (worker_count in parallel), then merges histograms in
// seed-list order, so results do not depend on scheduling. Seeds must be
// distinct.
CampaignResult run_campaign(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                            int worker_count = 1, const RunHooksFactory& hooks_factory = nullptr);

// Builds the merged snapshot reports from per-run results (exposed for tests).
std::vector<SnapshotReport> merge_snapshots(const RunConfig& config,
                                            const std::vector<RunResult>& runs);

}  // namespace sedsim
