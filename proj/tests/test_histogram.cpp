#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "sedsim/constants.hpp"
#include "sedsim/histogram.hpp"

using namespace sedsim;

namespace {

// Closed-form mass of the ground-state density below r (the quadrature-free
// oracle for the l1 tests).
double qm_cdf(double r, double a) {
  const double x = r / a;
  return 1.0 - std::exp(-2.0 * x) * (1.0 + 2.0 * x + 2.0 * x * x);
}

}  // namespace

TEST_CASE("single residence acts as a delta distribution") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  RadialHistogram h(1e-10, 5e-8);
  h.accumulate(a, 1.0);
  const auto table = h.normalize();
  const auto bin = static_cast<std::size_t>(a / 1e-10);
  for (std::size_t i = 0; i < table.p.size(); ++i) {
    if (i == bin)
      CHECK(table.p[i] == doctest::Approx(1.0 / 1e-10));
    else
      CHECK(table.p[i] == 0.0);
  }
}

TEST_CASE("accumulation is linear in time weights") {
  RadialHistogram h(1e-10, 5e-8);
  h.accumulate(1e-8, 0.5);
  h.accumulate(3e-8, 0.5);
  const auto table = h.normalize();
  CHECK(table.p[static_cast<std::size_t>(1e-8 / 1e-10)] ==
        doctest::Approx(table.p[static_cast<std::size_t>(3e-8 / 1e-10)]));

  // a constant radius puts all mass in one bin
  RadialHistogram circ(1e-10, 5e-8);
  for (int i = 0; i < 1000; ++i) circ.accumulate(0.53e-8, 1e-3);
  CHECK(circ.total_time() == doctest::Approx(1.0));
  CHECK(circ.weights()[static_cast<std::size_t>(0.53e-8 / 1e-10)] == doctest::Approx(1.0));
}

TEST_CASE("normalization") {
  RadialHistogram h(0.5, 5.0);  // ten bins
  for (int i = 0; i < 10; ++i) h.accumulate(0.25 + 0.5 * i, 2.0);
  const auto table = h.normalize();
  for (double p : table.p) CHECK(p == doctest::Approx(1.0 / (10 * 0.5)));

  // doubling all weights and the total changes nothing
  RadialHistogram doubled = merge(h, h);
  const auto table2 = doubled.normalize();
  for (std::size_t i = 0; i < table.p.size(); ++i) CHECK(table2.p[i] == table.p[i]);

  RadialHistogram empty(0.5, 5.0);
  CHECK_THROWS_AS(empty.normalize(), std::logic_error);
  CHECK_THROWS_AS(h.accumulate(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("out-of-range residence counts toward total time only") {
  RadialHistogram h(1e-10, 5e-8);
  h.accumulate(1e-8, 1.0);
  h.accumulate(7e-8, 3.0);     // beyond r_max
  h.accumulate(5.05e-8, 0.25); // just past the last bin
  CHECK(h.total_time() == doctest::Approx(4.25));
  CHECK(h.out_of_range_time() == doctest::Approx(3.25));
  const auto table = h.normalize();
  double integral = 0.0;
  for (double p : table.p) integral += p * table.bin_width;
  CHECK(integral == doctest::Approx(1.0 / 4.25));
}

TEST_CASE("residence bookkeeping is exact") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> radius(0.0, 8e-8);
  std::uniform_real_distribution<double> weight(0.0, 1e-15);
  RadialHistogram h(1e-10, 5e-8);
  for (int i = 0; i < 20000; ++i) h.accumulate(radius(rng), weight(rng));
  double bins = 0.0;
  for (double w : h.weights()) bins += w;
  CHECK(bins + h.out_of_range_time() == doctest::Approx(h.total_time()).epsilon(1e-12));
}

TEST_CASE("merging") {
  RadialHistogram a(1e-10, 5e-8), b(1e-10, 5e-8), empty(1e-10, 5e-8);
  a.accumulate(1e-8, 1.0);
  a.accumulate(6e-8, 0.5);
  b.accumulate(2e-8, 2.0);

  const RadialHistogram a_then_b = merge(a, b);
  const RadialHistogram b_then_a = merge(b, a);
  for (std::size_t i = 0; i < a.bin_count(); ++i)
    CHECK(a_then_b.weights()[i] == b_then_a.weights()[i]);
  CHECK(a_then_b.total_time() == b_then_a.total_time());
  CHECK(a_then_b.out_of_range_time() == b_then_a.out_of_range_time());

  const RadialHistogram with_empty = merge(a, empty);
  for (std::size_t i = 0; i < a.bin_count(); ++i)
    CHECK(with_empty.weights()[i] == a.weights()[i]);

  RadialHistogram other(2e-10, 5e-8);
  CHECK_THROWS_AS(a.merge(other), std::invalid_argument);
}

TEST_CASE("merging per-run histograms equals one concatenated stream") {
  // dyadic weights make every partial sum exact, so the equality is bitwise
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> bin(0, 499);
  std::uniform_int_distribution<int> exp2(0, 6);

  RadialHistogram stream(1e-10, 5e-8);
  std::vector<RadialHistogram> runs(11, RadialHistogram(1e-10, 5e-8));
  for (auto& run : runs) {
    for (int i = 0; i < 500; ++i) {
      const double r = (bin(rng) + 0.5) * 1e-10;
      const double dt = std::ldexp(1.0, -exp2(rng));
      run.accumulate(r, dt);
      stream.accumulate(r, dt);
    }
  }
  RadialHistogram merged(1e-10, 5e-8);
  for (const auto& run : runs) merged.merge(run);
  CHECK(merged.total_time() == stream.total_time());
  for (std::size_t i = 0; i < merged.bin_count(); ++i)
    CHECK(merged.weights()[i] == stream.weights()[i]);
}

TEST_CASE("l1 distance to the ground-state density") {
  const PhysicalConstants k;
  const double a = bohr_radius(k);
  const double bin_width = 1e-10;
  const double r_max = 5e-8;

  SUBCASE("identity") {
    RadialHistogram h(bin_width, r_max);
    h.accumulate(1e-8, 1.0);
    const auto table = h.normalize();
    CHECK(l1_distance(table, [&](double r) { return table.p[static_cast<std::size_t>(
                                 r / bin_width)]; }) == 0.0);
  }

  SUBCASE("delta at the Bohr radius") {
    RadialHistogram h(bin_width, r_max);
    h.accumulate(a, 1.0);
    const double got = l1_distance_to_qm(h.normalize(), a);
    // everything except the shared mass in the delta's bin counts twice
    const auto bin = static_cast<std::size_t>(a / bin_width);
    const double lo = bin * bin_width, hi = lo + bin_width;
    const double shared = std::min(qm_cdf(hi, a) - qm_cdf(lo, a), 1.0);
    const double expected = (1.0 - shared) + (qm_cdf(r_max, a) - shared);
    CHECK(got == doctest::Approx(expected).epsilon(2e-3));
    CHECK(got == doctest::Approx(1.98).epsilon(0.01));
  }

  SUBCASE("bin-averaged ground-state density sits within the midpoint error") {
    RadialHistogram h(bin_width, r_max);
    // accumulate each bin's exact mass; total time 1 second
    for (std::size_t i = 0; i < h.bin_count(); ++i) {
      const double lo = i * bin_width;
      h.accumulate(lo + 0.5 * bin_width, qm_cdf(lo + bin_width, a) - qm_cdf(lo, a));
    }
    h.accumulate(r_max + 1.0, 1.0 - qm_cdf(r_max, a));  // tail mass out of range
    const double got = l1_distance_to_qm(h.normalize(), a);
    CHECK(got < 0.01);
  }
}
