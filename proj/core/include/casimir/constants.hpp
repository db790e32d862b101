#pragma once

#include <numbers>
#include <string_view>

// Physical constants used throughout the library (SI units, CODATA 2018 exact
// or recommended values). Part of the waves module.
namespace casimir::constants {

inline constexpr std::string_view kConstantsVersion = "CODATA-2018";

inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 2.99792458e8;              // m / s
inline constexpr double k_B = 1.380649e-23;            // J / K
inline constexpr double epsilon0 = 8.8541878128e-12;   // F / m
inline constexpr double e_charge = 1.602176634e-19;    // C

// Stefan-Boltzmann constant pi^2 k_B^4 / (60 c^2 hbar^3), W m^-2 K^-4.
inline constexpr double stefan_boltzmann =
    pi * pi * (k_B * k_B * k_B * k_B) / (60.0 * c * c * (hbar * hbar * hbar));

// Atomic unit of electric polarizability, C m^2 / V.
inline constexpr double polarizability_au = 1.64877727436e-41;

}  // namespace casimir::constants
