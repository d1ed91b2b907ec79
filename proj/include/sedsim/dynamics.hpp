#pragma once

#include "sedsim/constants.hpp"
#include "sedsim/vec.hpp"
#include "sedsim/zpfield.hpp"

namespace sedsim {

// Planar state of the electron. The orbit is confined to the x-y plane, so
// position and velocity never carry z components.
struct ParticleState {
  Vec2 position;  // [cm]
  Vec2 velocity;  // [cm/s]
  double t = 0.0; // [s]

  double radius() const { return position.norm(); }
};

struct PhaseDerivative {
  Vec2 dposition;  // = velocity [cm/s]
  Vec2 dvelocity;  // = acceleration [cm/s^2]
};

inline constexpr double kSingularityFloor = 1e-11;  // [cm]

// Coulomb acceleration -e^2 z / (m |z|^3).
// Throws SingularityError when |z| drops below the floor.
Vec2 coulomb_accel(const Vec2& z, const PhysicalConstants& k,
                   double floor_r = kSingularityFloor);

// Radiation reaction with the Coulomb acceleration substituted into the
// third-derivative term and the time derivative expanded analytically:
//   a_rr = -(2/3) e^4 / (m^2 c^3) * [ v/|z|^3 - 3 z (z.v)/|z|^5 ].
Vec2 radiation_reaction_accel(const Vec2& z, const Vec2& v, const PhysicalConstants& k,
                              double floor_r = kSingularityFloor);

// Lorentz acceleration (-e/m)(E + v x B / c) evaluated in 3d with planar v.
Vec3 lorentz_accel_3d(const Vec2& v, const Vec3& e_field, const Vec3& b_field,
                      const PhysicalConstants& k);

// Planar projection of the above; the discarded z part is the magnetic force
// pushing out of the orbit plane.
Vec2 lorentz_accel(const Vec2& v, const Vec3& e_field, const Vec3& b_field,
                   const PhysicalConstants& k);

// Right-hand side of the equation of motion. The window of retained field
// modes is selected once per integrator step attempt (begin_step) from the
// radius at the step start and reused for all stages of that attempt.
struct ForceModel {
  const PhysicalConstants* constants = nullptr;
  const FieldRealization* field = nullptr;  // null: no radiation field
  FieldMode field_mode = FieldMode::window;
  double window_fraction = 0.03;
  bool radiation_reaction = true;
  double singularity_floor = kSingularityFloor;

  WindowRange window;

  void begin_step(const ParticleState& s);
  PhaseDerivative operator()(const ParticleState& s) const;
};

// Convenience entry: selects the window from the instantaneous radius and
// evaluates the full right-hand side once.
PhaseDerivative total_derivative(const ParticleState& s, const FieldRealization* field,
                                 const RunConfig& config);

}  // namespace sedsim
