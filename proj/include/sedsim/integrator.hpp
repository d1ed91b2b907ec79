#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "sedsim/config.hpp"
#include "sedsim/dynamics.hpp"
#include "sedsim/errors.hpp"

namespace sedsim {

struct StepOutcome {
  ParticleState state;     // advanced state when accepted, input state otherwise
  double dt_next = 0.0;    // controller proposal for the next attempt
  bool accepted = false;
  double error_estimate = 0.0;  // scaled norm; accepted iff <= 1
};

enum class StopReason { reached_target, collapse, ionization, stiffness };

struct TrajectoryEvent {
  StopReason kind = StopReason::reached_target;
  double t = 0.0;
  ParticleState state;
};

struct GuardLimits {
  double r_min = 0.0;  // [cm]; collapse event below
  double r_max = 0.0;  // [cm]; ionization event above
};

template <typename F>
concept HasBeginStep = requires(F f, const ParticleState& s) { f.begin_step(s); };

namespace detail {

// Cash-Karp embedded 4(5) pair.
inline constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 3.0 / 5.0, kC5 = 1.0,
                        kC6 = 7.0 / 8.0;
inline constexpr double kA21 = 1.0 / 5.0;
inline constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
inline constexpr double kA41 = 3.0 / 10.0, kA42 = -9.0 / 10.0, kA43 = 6.0 / 5.0;
inline constexpr double kA51 = -11.0 / 54.0, kA52 = 5.0 / 2.0, kA53 = -70.0 / 27.0,
                        kA54 = 35.0 / 27.0;
inline constexpr double kA61 = 1631.0 / 55296.0, kA62 = 175.0 / 512.0, kA63 = 575.0 / 13824.0,
                        kA64 = 44275.0 / 110592.0, kA65 = 253.0 / 4096.0;
inline constexpr double kB1 = 37.0 / 378.0, kB3 = 250.0 / 621.0, kB4 = 125.0 / 594.0,
                        kB6 = 512.0 / 1771.0;
inline constexpr double kE1 = 37.0 / 378.0 - 2825.0 / 27648.0;
inline constexpr double kE3 = 250.0 / 621.0 - 18575.0 / 48384.0;
inline constexpr double kE4 = 125.0 / 594.0 - 13525.0 / 55296.0;
inline constexpr double kE5 = -277.0 / 14336.0;
inline constexpr double kE6 = 512.0 / 1771.0 - 1.0 / 4.0;

inline double scaled_error(double diff, double value, double abs_tol, double rel_tol) {
  return std::abs(diff) / (abs_tol + rel_tol * std::abs(value));
}

}  // namespace detail

// One embedded Cash-Karp 4(5) attempt. The error estimate is the max over
// state components of |y5 - y4| / (abs_tol + rel_tol |y5|); the step is
// accepted iff it is <= 1 and the 5th-order solution is kept. The next step
// size follows dt * safety * err^(-1/5), clamped to [dt_min, dt_max] and to a
// growth factor of 5.
template <typename DerivFn>
StepOutcome attempt_step(const ParticleState& y, double dt, DerivFn&& deriv,
                         const IntegratorConfig& cfg) {
  using namespace detail;

  auto stage = [&](double c, const Vec2& dp, const Vec2& dv) {
    return ParticleState{y.position + dt * dp, y.velocity + dt * dv, y.t + c * dt};
  };

  const PhaseDerivative k1 = deriv(y);
  const PhaseDerivative k2 = deriv(stage(kC2, kA21 * k1.dposition, kA21 * k1.dvelocity));
  const PhaseDerivative k3 = deriv(stage(kC3, kA31 * k1.dposition + kA32 * k2.dposition,
                                         kA31 * k1.dvelocity + kA32 * k2.dvelocity));
  const PhaseDerivative k4 =
      deriv(stage(kC4, kA41 * k1.dposition + kA42 * k2.dposition + kA43 * k3.dposition,
                  kA41 * k1.dvelocity + kA42 * k2.dvelocity + kA43 * k3.dvelocity));
  const PhaseDerivative k5 = deriv(stage(
      kC5, kA51 * k1.dposition + kA52 * k2.dposition + kA53 * k3.dposition + kA54 * k4.dposition,
      kA51 * k1.dvelocity + kA52 * k2.dvelocity + kA53 * k3.dvelocity + kA54 * k4.dvelocity));
  const PhaseDerivative k6 =
      deriv(stage(kC6,
                  kA61 * k1.dposition + kA62 * k2.dposition + kA63 * k3.dposition +
                      kA64 * k4.dposition + kA65 * k5.dposition,
                  kA61 * k1.dvelocity + kA62 * k2.dvelocity + kA63 * k3.dvelocity +
                      kA64 * k4.dvelocity + kA65 * k5.dvelocity));

  const Vec2 pos5 = y.position + dt * (kB1 * k1.dposition + kB3 * k3.dposition +
                                       kB4 * k4.dposition + kB6 * k6.dposition);
  const Vec2 vel5 = y.velocity + dt * (kB1 * k1.dvelocity + kB3 * k3.dvelocity +
                                       kB4 * k4.dvelocity + kB6 * k6.dvelocity);
  const Vec2 pos_err = dt * (kE1 * k1.dposition + kE3 * k3.dposition + kE4 * k4.dposition +
                             kE5 * k5.dposition + kE6 * k6.dposition);
  const Vec2 vel_err = dt * (kE1 * k1.dvelocity + kE3 * k3.dvelocity + kE4 * k4.dvelocity +
                             kE5 * k5.dvelocity + kE6 * k6.dvelocity);

  double err = detail::scaled_error(pos_err.x, pos5.x, cfg.abs_tol_pos, cfg.rel_tol);
  err = std::max(err, detail::scaled_error(pos_err.y, pos5.y, cfg.abs_tol_pos, cfg.rel_tol));
  err = std::max(err, detail::scaled_error(vel_err.x, vel5.x, cfg.abs_tol_vel, cfg.rel_tol));
  err = std::max(err, detail::scaled_error(vel_err.y, vel5.y, cfg.abs_tol_vel, cfg.rel_tol));

  double factor = err > 0.0 ? cfg.safety * std::pow(err, -0.2) : 5.0;
  factor = std::clamp(factor, 0.1, 5.0);
  const double dt_next = std::clamp(dt * factor, cfg.dt_min, cfg.dt_max);

  StepOutcome out;
  out.accepted = err <= 1.0;
  out.error_estimate = err;
  out.dt_next = dt_next;
  out.state = out.accepted ? ParticleState{pos5, vel5, y.t + dt} : y;
  return out;
}

struct AdvanceOutcome {
  ParticleState state;
  double dt_next = 0.0;  // carry into a follow-up segment
  std::optional<TrajectoryEvent> event;

  bool completed() const { return !event.has_value(); }
};

namespace detail {
struct NullObserver {
  void operator()(const ParticleState&, const ParticleState&, double) const {}
};
}  // namespace detail

// Advances the state to exactly t_target (the last step is truncated), calling
// observer(before, after, dt) on every accepted step. Terminates early with a
// typed event on guard violation (collapse/ionization, checked at step
// granularity), on a singularity inside a derivative evaluation (collapse), or
// after max_rejects consecutive rejected attempts (stiffness). The initial
// step size is dt_start when positive, else dt_init.
template <typename DerivFn, typename Observer = detail::NullObserver>
AdvanceOutcome advance(ParticleState state, double t_target, DerivFn&& deriv,
                       const IntegratorConfig& cfg, const GuardLimits& guards,
                       Observer&& observer = Observer{}, double dt_start = 0.0) {
  double dt = std::clamp(dt_start > 0.0 ? dt_start : cfg.dt_init, cfg.dt_min, cfg.dt_max);
  int rejects = 0;

  while (state.t < t_target) {
    const double remaining = t_target - state.t;
    const bool final_step = dt >= remaining;
    const double dt_try = final_step ? remaining : dt;
    StepOutcome step;
    try {
      if constexpr (HasBeginStep<std::remove_reference_t<DerivFn>>) deriv.begin_step(state);
      step = attempt_step(state, dt_try, deriv, cfg);
    } catch (const SingularityError&) {
      return {state, dt, TrajectoryEvent{StopReason::collapse, state.t, state}};
    }

    if (step.accepted) {
      rejects = 0;
      if (final_step) step.state.t = t_target;  // land exactly, no ulp residue
      observer(state, step.state, dt_try);
      state = step.state;
      dt = step.dt_next;
      const double r = state.radius();
      if (r < guards.r_min)
        return {state, dt, TrajectoryEvent{StopReason::collapse, state.t, state}};
      if (r > guards.r_max)
        return {state, dt, TrajectoryEvent{StopReason::ionization, state.t, state}};
    } else {
      dt = step.dt_next;
      if (++rejects > cfg.max_rejects)
        return {state, dt, TrajectoryEvent{StopReason::stiffness, state.t, state}};
    }
  }
  return {state, dt, std::nullopt};
}

}  // namespace sedsim
