#pragma once

namespace sedsim {

// CGS-Gaussian units throughout the code base: lengths in cm, times in s,
// masses in g, charge in statC, E in statvolt/cm, B in gauss. The Coulomb
// force is then e^2/r^2 and the magnetic force carries a 1/c factor.
struct PhysicalConstants {
  double e = 4.80320e-10;     // elementary charge magnitude [statC]
  double m = 9.10938e-28;     // electron rest mass [g]
  double c = 2.99792e10;      // speed of light [cm/s]
  double hbar = 1.05457e-27;  // reduced Planck constant [erg s]

  void validate() const;  // throws ValidationError if any field is not positive
};

// a_B = hbar^2 / (m e^2), about 0.529 Angstrom for the defaults above.
double bohr_radius(const PhysicalConstants& k);

// Angular frequency of a circular Kepler orbit at radius r,
// omega = sqrt(e^2 / (m r^3)). Throws std::domain_error for r <= 0.
double circular_frequency(double r, const PhysicalConstants& k);

// Speed on a circular Kepler orbit at radius r, v = sqrt(e^2 / (m r)).
// Throws std::domain_error for r <= 0.
double circular_speed(double r, const PhysicalConstants& k);

// Hydrogen ground-state radial probability density
// P(r) = (4 r^2 / a_B^3) exp(-2 r / a_B), normalized to unit integral.
double qm_radial_density(double r, double bohr);

}  // namespace sedsim
