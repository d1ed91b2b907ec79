#include "sedsim/random.hpp"

#include <cmath>
#include <numbers>

namespace sedsim {

GaussianPair gaussian_pair(std::uint64_t seed, std::uint64_t counter) {
  const double u1 = unit_open(keyed_word(seed, counter, 0));
  const double u2 = unit_open(keyed_word(seed, counter, 1));
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace sedsim
