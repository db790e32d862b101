#pragma once

#include <complex>

#include "casimir/constants.hpp"

namespace casimir {

using cplx = std::complex<double>;

// TE <-> p = 1, TM <-> p = 2.
enum class Polarization { TE = 1, TM = 2 };

inline constexpr Polarization kPolarizations[] = {Polarization::TE, Polarization::TM};

inline int index_of(Polarization p) { return static_cast<int>(p); }

enum class Sector { Propagative, Evanescent };

// Light line k = omega/c belongs to the propagative sector.
Sector sector_of(double omega, double k);

struct Mode {
  double omega;  // rad/s
  double k;      // transverse wavevector magnitude, 1/m
  Polarization p;

  Sector sector() const { return sector_of(omega, k); }
};

struct ThermalTriple {
  double T1 = 0.0;  // body 1, K
  double T2 = 0.0;  // body 2, K
  double T3 = 0.0;  // environment, K

  // Throws DomainError unless every component is finite and >= 0.
  void validate() const;
  double max() const;
};

// z component of the vacuum wavevector, Im >= 0 branch: real and >= 0 for
// k <= omega/c, purely imaginary above the light line.
cplx kz_vacuum(double omega, double k);

// z component inside a medium of permittivity eps, Im >= 0 branch.
cplx kz_medium(cplx eps, double omega, double k);

// Mean photon number 1/(exp(hbar omega / k_B T) - 1). Exactly 0 at T = 0 and
// whenever hbar omega / k_B T > 700.
double bose_n(double omega, double T);

// n(omega, Ta) - n(omega, Tb); exactly 0 when Ta == Tb.
double n_diff(double omega, double Ta, double Tb);

// Unconjugated dot product eps_p^+ . eps_p^- of the two polarization vectors
// sharing (omega, k): 1 for TE and (c/omega)^2 (k^2 - kz^2) = (c/omega)^2 (2k^2 - omega^2/c^2)
// for TM, real in both sectors.
double pol_dot_pm(Polarization p, double omega, double k);

}  // namespace casimir
