#include <doctest.h>

#include <cmath>
#include <fstream>

#include "sedsim/config.hpp"
#include "sedsim/constants.hpp"
#include "sedsim/errors.hpp"

using namespace sedsim;

namespace {

// Composite Simpson quadrature, the independent oracle for density integrals.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bohr radius matches the quoted 0.529 Angstrom within 0.5%") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  CHECK(a == doctest::Approx(0.529e-8).epsilon(0.005));
  CHECK(a == doctest::Approx(5.291766404368475e-9).epsilon(1e-12));
}

TEST_CASE("bohr radius scaling in each constant") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);

  PhysicalConstants k2 = k;
  k2.e *= 2.0;
  CHECK(bohr_radius(k2) == doctest::Approx(a / 4.0).epsilon(1e-12));

  k2 = k;
  k2.hbar *= 2.0;
  CHECK(bohr_radius(k2) == doctest::Approx(4.0 * a).epsilon(1e-12));

  // exponent check by finite ratios: a ~ hbar^2 m^-1 e^-2, no c dependence
  const double kappa = 1.7;
  auto exponent = [&](auto mutate) {
    PhysicalConstants kk = k;
    mutate(kk);
    return std::log(bohr_radius(kk) / a) / std::log(kappa);
  };
  CHECK(exponent([&](PhysicalConstants& c) { c.hbar *= kappa; }) == doctest::Approx(2.0));
  CHECK(exponent([&](PhysicalConstants& c) { c.m *= kappa; }) == doctest::Approx(-1.0));
  CHECK(exponent([&](PhysicalConstants& c) { c.e *= kappa; }) == doctest::Approx(-2.0));
  CHECK(exponent([&](PhysicalConstants& c) { c.c *= kappa; }) == doctest::Approx(0.0));
}

TEST_CASE("circular orbit frequency") {
  const PhysicalConstants k;
  // the two radii quoted for the retained frequency band
  CHECK(circular_frequency(0.1e-8, k) == doctest::Approx(5.03e17).epsilon(0.01));
  CHECK(circular_frequency(1.06e-5, k) == doctest::Approx(4.61e11).epsilon(0.01));
  CHECK(circular_frequency(bohr_radius(k), k) ==
        doctest::Approx(4.134140801256354e16).epsilon(1e-12));
  CHECK_THROWS_AS(circular_frequency(0.0, k), std::domain_error);
  CHECK_THROWS_AS(circular_frequency(-1e-8, k), std::domain_error);
}

TEST_CASE("omega^2 m r^3 recovers e^2 across the working radius range") {
  const PhysicalConstants k;
  for (double lg = -9.0; lg <= -5.0; lg += 0.25) {
    const double r = std::pow(10.0, lg);
    const double w = circular_frequency(r, k);
    CHECK(w * w * k.m * r * r * r == doctest::Approx(k.e * k.e).epsilon(1e-12));
  }
}

TEST_CASE("circular orbit speed") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  CHECK(circular_speed(a, k) == doctest::Approx(218769074.0301734).epsilon(1e-12));
  CHECK(circular_speed(a, k) == doctest::Approx(2.19e8).epsilon(0.01));
  CHECK(circular_speed(4.0 * a, k) == doctest::Approx(0.5 * circular_speed(a, k)).epsilon(1e-12));
  // v = omega r
  for (double r : {0.1e-8, 0.53e-8, 3e-8}) {
    CHECK(circular_speed(r, k) / circular_frequency(r, k) == doctest::Approx(r).epsilon(1e-12));
  }
  CHECK_THROWS_AS(circular_speed(0.0, k), std::domain_error);
}

TEST_CASE("ground-state radial density") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  CHECK(qm_radial_density(0.0, a) == 0.0);
  CHECK(qm_radial_density(a, a) == doctest::Approx(4.0 / a * std::exp(-2.0)).epsilon(1e-14));
  CHECK(qm_radial_density(a, a) == doctest::Approx(102298758.40693973).epsilon(1e-12));
  // maximum sits at r = a
  CHECK(qm_radial_density(a, a) > qm_radial_density(a * 1.001, a));
  CHECK(qm_radial_density(a, a) > qm_radial_density(a * 0.999, a));

  const double integral =
      simpson([a](double r) { return qm_radial_density(r, a); }, 0.0, 20.0 * a, 20000);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("config defaults mirror the published setup") {
  const RunConfig cfg;
  CHECK(cfg.cavity.lx == doctest::Approx(37.4e-8));
  CHECK(cfg.cavity.lz == doctest::Approx(0.4085));
  CHECK(cfg.cavity.r_cutoff == doctest::Approx(0.1e-8));
  CHECK(cfg.window_fraction == doctest::Approx(0.03));
  CHECK(cfg.r0 == doctest::Approx(0.53e-8));
  CHECK(cfg.snapshot_times.size() == 4);
  CHECK(cfg.snapshot_times[0] == doctest::Approx(1.417e-12));
  CHECK(cfg.snapshot_times[3] == doctest::Approx(7.252e-12));
  CHECK(cfg.t_end == doctest::Approx(7.252e-12));
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config json round trip and partial documents") {
  RunConfig cfg;
  cfg.seed = 99;
  cfg.window_fraction = 0.05;
  cfg.integrator.rel_tol = 3e-11;
  const RunConfig back = RunConfig::from_json(cfg.to_json());
  CHECK(back.seed == 99);
  CHECK(back.window_fraction == doctest::Approx(0.05));
  CHECK(back.integrator.rel_tol == doctest::Approx(3e-11));

  // unknown keys are ignored, missing keys keep defaults
  const auto j = nlohmann::json::parse(R"({"seed": 5, "cavity": {"lz": 4.085e-5}})");
  const RunConfig partial = RunConfig::from_json(j);
  CHECK(partial.seed == 5);
  CHECK(partial.cavity.lz == doctest::Approx(4.085e-5));
  CHECK(partial.cavity.lx == doctest::Approx(37.4e-8));
}

TEST_CASE("config validation names the offending key") {
  RunConfig cfg;
  cfg.window_fraction = 1.5;
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("window_fraction"), ValidationError);

  cfg = RunConfig{};
  cfg.snapshot_times = {2e-12, 1e-12};
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("snapshot_times"), ValidationError);

  cfg = RunConfig{};
  cfg.snapshot_times = {8e-12};  // beyond t_end
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("snapshot_times"), ValidationError);

  cfg = RunConfig{};
  cfg.r0 = 600e-8;  // outside the guard band
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("r0"), ValidationError);

  cfg = RunConfig{};
  cfg.cavity.lz = 10e-8;  // shorter than lx
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("lz"), ValidationError);

  cfg = RunConfig{};
  cfg.cavity.r_cutoff = 1.0;  // omega_max below omega_min
  CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("r_cutoff"), ValidationError);

  cfg = RunConfig{};
  cfg.constants.m = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("dotted overrides") {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.apply_override("seed", "42");
  CHECK(cfg.seed == 42);
  cfg.apply_override("integrator.rel_tol", "1e-10");
  CHECK(cfg.integrator.rel_tol == doctest::Approx(1e-10));
  cfg.apply_override("field_mode", "full");
  CHECK(cfg.field_mode == FieldMode::full);
  cfg.apply_override("snapshot_times", "[1e-13, 2e-13]");
  CHECK(cfg.snapshot_times.size() == 2);
}
