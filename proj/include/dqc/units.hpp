#pragma once

#include <numbers>

// Unit conventions used throughout: energies and frequencies in cm^-1,
// times in fs.  Field-envelope evaluations convert to angular frequency
// (rad/fs) at the point of use.
namespace dqc::units {

inline constexpr double speed_of_light_cm_per_fs = 2.99792458e-5;

// rad/fs per cm^-1
inline constexpr double two_pi_c =
    2.0 * std::numbers::pi * speed_of_light_cm_per_fs;

// k_B/(h c), cm^-1 per Kelvin
inline constexpr double boltzmann_cm1_per_K = 0.6950348004;

inline constexpr double rad_per_fs(double wavenumber_cm1) {
  return two_pi_c * wavenumber_cm1;
}

inline constexpr double cm1_from_rad_per_fs(double omega_rad_fs) {
  return omega_rad_fs / two_pi_c;
}

}  // namespace dqc::units
