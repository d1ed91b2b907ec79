#include "sedsim/dynamics.hpp"

#include <cmath>

#include "sedsim/errors.hpp"

namespace sedsim {

namespace {

double checked_radius(const Vec2& z, double floor_r) {
  const double r = z.norm();
  if (r < floor_r) throw SingularityError("electron inside singularity floor", r);
  return r;
}

}  // namespace

Vec2 coulomb_accel(const Vec2& z, const PhysicalConstants& k, double floor_r) {
  const double r = checked_radius(z, floor_r);
  const double factor = -k.e * k.e / (k.m * r * r * r);
  return factor * z;
}

Vec2 radiation_reaction_accel(const Vec2& z, const Vec2& v, const PhysicalConstants& k,
                              double floor_r) {
  const double r = checked_radius(z, floor_r);
  const double r3 = r * r * r;
  const double coef = -(2.0 / 3.0) * k.e * k.e * k.e * k.e / (k.m * k.m * k.c * k.c * k.c);
  return coef * (v * (1.0 / r3) - z * (3.0 * dot(z, v) / (r3 * r * r)));
}

Vec3 lorentz_accel_3d(const Vec2& v, const Vec3& e_field, const Vec3& b_field,
                      const PhysicalConstants& k) {
  const Vec3 v3{v.x, v.y, 0.0};
  const Vec3 force_per_charge = e_field + (1.0 / k.c) * cross(v3, b_field);
  return (-k.e / k.m) * force_per_charge;
}

Vec2 lorentz_accel(const Vec2& v, const Vec3& e_field, const Vec3& b_field,
                   const PhysicalConstants& k) {
  return lorentz_accel_3d(v, e_field, b_field, k).xy();
}

void ForceModel::begin_step(const ParticleState& s) {
  if (!field) return;
  window = field_mode == FieldMode::full ? field->full_range()
                                         : field->window_indices(s.radius(), window_fraction);
}

PhaseDerivative ForceModel::operator()(const ParticleState& s) const {
  // Fused Coulomb + radiation reaction evaluation; this is the innermost hot
  // path of every integrator stage.
  const PhysicalConstants& k = *constants;
  const double r2 = s.position.norm2();
  const double r = std::sqrt(r2);
  if (r < singularity_floor) throw SingularityError("electron inside singularity floor", r);
  const double inv_r3 = 1.0 / (r2 * r);

  Vec2 accel = (-k.e * k.e / k.m * inv_r3) * s.position;
  if (radiation_reaction) {
    const double coef = -(2.0 / 3.0) * k.e * k.e * k.e * k.e / (k.m * k.m * k.c * k.c * k.c);
    accel += coef * inv_r3 *
             (s.velocity - (3.0 * dot(s.position, s.velocity) / r2) * s.position);
  }
  if (field) {
    const EmFields em = field->fields_at(s.t, window);
    accel += lorentz_accel(s.velocity, em.e, em.b, k);
  }
  return {s.velocity, accel};
}

PhaseDerivative total_derivative(const ParticleState& s, const FieldRealization* field,
                                 const RunConfig& config) {
  ForceModel model{&config.constants, config.zero_field ? nullptr : field, config.field_mode,
                   config.window_fraction, config.radiation_reaction};
  model.begin_step(s);
  return model(s);
}

}  // namespace sedsim
