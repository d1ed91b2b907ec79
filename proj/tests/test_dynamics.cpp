#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sedsim/dynamics.hpp"
#include "sedsim/errors.hpp"

using namespace sedsim;

namespace {

Vec2 rotate(const Vec2& v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

CavityConfig reduced_cavity() {
  CavityConfig c;
  c.lz = 4085e-8;
  return c;
}

}  // namespace

TEST_CASE("Coulomb acceleration") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);

  const Vec2 at_bohr = coulomb_accel({a, 0.0}, k);
  CHECK(at_bohr.x == doctest::Approx(-9.044221550012115e24).epsilon(1e-12));
  CHECK(at_bohr.y == 0.0);

  const Vec2 twice = coulomb_accel({2.0 * a, 0.0}, k);
  CHECK(twice.x == doctest::Approx(at_bohr.x / 4.0).epsilon(1e-12));

  // central force: rotation equivariant
  for (double angle : {0.3, 1.1, 2.9, -0.7}) {
    const Vec2 z{0.7 * a, -0.4 * a};
    const Vec2 direct = coulomb_accel(rotate(z, angle), k);
    const Vec2 rotated = rotate(coulomb_accel(z, k), angle);
    CHECK(direct.x == doctest::Approx(rotated.x).epsilon(1e-12));
    CHECK(direct.y == doctest::Approx(rotated.y).epsilon(1e-12));
  }

  CHECK_THROWS_AS(coulomb_accel({1e-12, 0.0}, k), SingularityError);
}

TEST_CASE("radiation reaction acceleration") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);

  const Vec2 at_rest = radiation_reaction_accel({a, 0.0}, {0.0, 0.0}, k);
  CHECK(at_rest.x == 0.0);
  CHECK(at_rest.y == 0.0);

  // circular geometry (z.v = 0): anti-parallel to v with the closed-form size
  const double v = circular_speed(a, k);
  const Vec2 rr = radiation_reaction_accel({a, 0.0}, {0.0, v}, k);
  const double coef = (2.0 / 3.0) * std::pow(k.e, 4) / (k.m * k.m * std::pow(k.c, 3));
  CHECK(rr.x == doctest::Approx(0.0));
  CHECK(rr.y == doctest::Approx(-coef * v / (a * a * a)).epsilon(1e-12));
  CHECK(rr.y < 0.0);

  // radial motion: v/r^3 - 3 z (z.v)/r^5 with z || v flips the sign
  const Vec2 radial = radiation_reaction_accel({a, 0.0}, {v, 0.0}, k);
  CHECK(radial.x == doctest::Approx(2.0 * coef * v / (a * a * a)).epsilon(1e-12));

  CHECK_THROWS_AS(radiation_reaction_accel({1e-12, 0.0}, {0.0, v}, k), SingularityError);
}

TEST_CASE("Lorentz acceleration and planar projection") {
  const PhysicalConstants k;

  SUBCASE("pure electric force on charge -e") {
    const Vec2 out = lorentz_accel({0.0, 0.0}, {1e3, 0.0, 0.0}, {}, k);
    CHECK(out.x == doctest::Approx(-k.e / k.m * 1e3).epsilon(1e-14));
    CHECK(out.x == doctest::Approx(-5.2728067113239314e20).epsilon(1e-12));
    CHECK(out.y == 0.0);
  }

  SUBCASE("in-plane magnetic field pushes only out of the plane") {
    const double v0 = 1e8, b0 = 2e3;
    const Vec3 full = lorentz_accel_3d({v0, 0.0}, {}, {0.0, b0, 0.0}, k);
    CHECK(full.x == 0.0);
    CHECK(full.y == 0.0);
    CHECK(full.z == doctest::Approx(-k.e / k.m * v0 * b0 / k.c).epsilon(1e-14));
    const Vec2 projected = lorentz_accel({v0, 0.0}, {}, {0.0, b0, 0.0}, k);
    CHECK(projected.x == 0.0);
    CHECK(projected.y == 0.0);
  }

  SUBCASE("field along y") {
    const Vec2 out = lorentz_accel({0.0, 0.0}, {0.0, 1e3, 0.0}, {}, k);
    CHECK(out.x == 0.0);
    CHECK(out.y == doctest::Approx(-5.2728067113239314e20).epsilon(1e-12));
  }
}

TEST_CASE("total derivative superposes the three accelerations") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  const FieldRealization field(4, reduced_cavity(), k);

  ForceModel model{&k, &field, FieldMode::window, 0.03, true};
  const ParticleState s{{0.8 * a, -0.3 * a}, {1e8, 5e7}, 2.4e-16};
  model.begin_step(s);
  const PhaseDerivative d = model(s);
  CHECK(d.dposition.x == s.velocity.x);
  CHECK(d.dposition.y == s.velocity.y);

  const EmFields em = field.fields_at(s.t, model.window);
  const Vec2 sum = coulomb_accel(s.position, k) +
                   radiation_reaction_accel(s.position, s.velocity, k) +
                   lorentz_accel(s.velocity, em.e, em.b, k);
  CHECK(d.dvelocity.x == doctest::Approx(sum.x).epsilon(1e-14));
  CHECK(d.dvelocity.y == doctest::Approx(sum.y).epsilon(1e-14));
}

TEST_CASE("with the field off the derivative is the two-term analytic sum") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  ForceModel model{&k, nullptr, FieldMode::window, 0.03, true};
  const ParticleState s{{a, 0.0}, {0.0, circular_speed(a, k)}, 0.0};
  model.begin_step(s);
  const PhaseDerivative d = model(s);
  const Vec2 expected =
      coulomb_accel(s.position, k) + radiation_reaction_accel(s.position, s.velocity, k);
  const double mag = expected.norm();
  CHECK((d.dvelocity - expected).norm() / mag < 1e-9);
}

TEST_CASE("degenerate window leaves only the conservative terms") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  const FieldRealization field(4, CavityConfig{}, k, FieldRealization::Storage::on_demand);

  // f = 0 with no lattice frequency exactly on the orbit frequency
  ForceModel with_field{&k, &field, FieldMode::window, 0.0, true};
  ForceModel no_field{&k, nullptr, FieldMode::window, 0.0, true};
  const ParticleState s{{a, 0.0}, {0.0, circular_speed(a, k)}, 1.3e-15};
  with_field.begin_step(s);
  no_field.begin_step(s);
  CHECK(with_field.window.empty());
  const PhaseDerivative d1 = with_field(s);
  const PhaseDerivative d2 = no_field(s);
  CHECK(d1.dvelocity.x == d2.dvelocity.x);
  CHECK(d1.dvelocity.y == d2.dvelocity.y);
}

TEST_CASE("an all-covering window reproduces full summation bit for bit") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  const FieldRealization field(4, reduced_cavity(), k);

  ForceModel window_model{&k, &field, FieldMode::window, 0.97, true};
  ForceModel full_model{&k, &field, FieldMode::full, 0.03, true};
  const ParticleState s{{2.5 * a, 0.0}, {0.0, circular_speed(2.5 * a, k)}, 7.7e-16};
  window_model.begin_step(s);
  full_model.begin_step(s);
  REQUIRE(window_model.window == field.full_range());
  const PhaseDerivative dw = window_model(s);
  const PhaseDerivative df = full_model(s);
  CHECK(dw.dvelocity.x == df.dvelocity.x);
  CHECK(dw.dvelocity.y == df.dvelocity.y);
}

TEST_CASE("window selection follows the state radius") {
  const PhysicalConstants k;
  const FieldRealization field(4, reduced_cavity(), k);
  ForceModel model{&k, &field, FieldMode::window, 0.03, true};
  const double a = bohr_radius(k);
  model.begin_step({{a, 0.0}, {}, 0.0});
  CHECK(model.window == field.window_indices(a, 0.03));
  model.begin_step({{0.0, 2.0 * a}, {}, 0.0});
  CHECK(model.window == field.window_indices(2.0 * a, 0.03));
}
