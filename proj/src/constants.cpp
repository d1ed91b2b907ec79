#include "sedsim/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "sedsim/errors.hpp"

namespace sedsim {

void PhysicalConstants::validate() const {
  if (!(e > 0.0)) throw ValidationError("constants.e must be positive");
  if (!(m > 0.0)) throw ValidationError("constants.m must be positive");
  if (!(c > 0.0)) throw ValidationError("constants.c must be positive");
  if (!(hbar > 0.0)) throw ValidationError("constants.hbar must be positive");
}

double bohr_radius(const PhysicalConstants& k) { return k.hbar * k.hbar / (k.m * k.e * k.e); }

double circular_frequency(double r, const PhysicalConstants& k) {
  if (!(r > 0.0)) throw std::domain_error("circular_frequency: radius must be positive");
  return std::sqrt(k.e * k.e / (k.m * r * r * r));
}

double circular_speed(double r, const PhysicalConstants& k) {
  if (!(r > 0.0)) throw std::domain_error("circular_speed: radius must be positive");
  return std::sqrt(k.e * k.e / (k.m * r));
}

double qm_radial_density(double r, double bohr) {
  return 4.0 * r * r / (bohr * bohr * bohr) * std::exp(-2.0 * r / bohr);
}

}  // namespace sedsim
