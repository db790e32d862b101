#include "casimir/waves.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

using constants::c;

Sector sector_of(double omega, double k) {
  return k <= omega / c ? Sector::Propagative : Sector::Evanescent;
}

void ThermalTriple::validate() const {
  for (double T : {T1, T2, T3}) {
    if (!std::isfinite(T) || T < 0.0) throw DomainError("temperatures must be finite and >= 0 K");
  }
}

double ThermalTriple::max() const { return std::max({T1, T2, T3}); }

cplx kz_vacuum(double omega, double k) {
  const double k0 = omega / c;
  if (k <= k0) return {std::sqrt((k0 - k) * (k0 + k)), 0.0};
  return {0.0, std::sqrt((k - k0) * (k + k0))};
}

cplx kz_medium(cplx eps, double omega, double k) {
  // Vacuum inside the medium must reproduce the outside wavevector bit for bit.
  if (eps == cplx(1.0, 0.0)) return kz_vacuum(omega, k);
  const double k0 = omega / c;
  cplx s = std::sqrt(eps * (k0 * k0) - k * k);
  // std::sqrt sits on the Re >= 0 branch; a -0 imaginary part can still
  // land on the wrong side, so normalise explicitly.
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

double bose_n(double omega, double T) {
  if (T <= 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_B * T);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

double n_diff(double omega, double Ta, double Tb) {
  if (Ta == Tb) return 0.0;
  return bose_n(omega, Ta) - bose_n(omega, Tb);
}

double pol_dot_pm(Polarization p, double omega, double k) {
  if (p == Polarization::TE) return 1.0;
  const double k0 = omega / c;
  return (2.0 * k * k - k0 * k0) / (k0 * k0);
}

}  // namespace casimir
