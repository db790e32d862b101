#pragma once

#include <complex>
#include <string_view>

#include "casimir/scattering.hpp"
#include "casimir/waves.hpp"

namespace casimir {

// Identifies the formula a kernel value came from; doubles as the column name
// in tabular output.
enum class Term {
  EquilibriumMatsubara,
  PressureA,        // evanescent A kernel
  PressureB1,
  PressureB2,
  PressureB3,       // full printed B3, including the constant -1
  StefanBoltzmann,  // the constant -1 part of B3 alone
  HeatA,
  HeatB1,
  HeatB2,
  HeatB3,
  AtomPositionIndependent,
  AtomPropagativeInterference,
  AtomEvanescent,
  BodyAlone,
  GeneralDiagonal,
};

std::string_view term_tag(Term t);

struct KernelValue {
  double value = 0.0;
  Term term = Term::GeneralDiagonal;
};

// One (omega, k, p) point of the slab-slab problem with both bodies in a
// common frame. Body 1 rho_plus faces the gap, body 2 rho_minus faces it.
struct SpectralPoint {
  double omega = 0.0;
  double k = 0.0;
  Polarization p = Polarization::TE;
  cplx kz;
  DiagonalScattering body1;
  DiagonalScattering body2;
  cplx D;  // 1 - rho1+ rho2- (frame invariant)

  Sector sector() const { return sector_of(omega, k); }
};

SpectralPoint make_spectral_point(double omega, double k, Polarization p, const DiagonalScattering& body1,
                                  const DiagonalScattering& body2);
SpectralPoint slab_pair_point(const SlabPairLayout& layout, Polarization p, double omega, double k);

// ---- equilibrium --------------------------------------------------------

// Integrand in kappa of the imaginary-frequency equilibrium pressure:
// -kappa q rho1 rho2 e^{-2qd} / (1 - rho1 rho2 e^{-2qd}), q^2 = xi^2/c^2 + kappa^2,
// with rho evaluated at i xi. Negative = attraction. The full pressure is
// (k_B T / pi) sum'_n sum_p int dkappa of this.
double kernel_equilibrium_matsubara(double xi, double kappa, double rho1, double rho2, double d);

// ---- nonequilibrium slab-slab kernels -----------------------------------
// Integrands per d omega dk, including hbar/(4 pi^2) or hbar/(2 pi^2),
// the factor k and n(omega, T). Pressure kernels carry the sign of the
// z force on body 1 (positive pushes body 1 towards body 2); heat kernels
// are positive when body 1 absorbs. Sector mismatch raises DomainError.

KernelValue kernel_A_ew(const SpectralPoint& pt, double T);
KernelValue kernel_B1_pw(const SpectralPoint& pt, double T);
KernelValue kernel_B2_pw(const SpectralPoint& pt, double T);
KernelValue kernel_B3_pw(const SpectralPoint& pt, double T);
KernelValue kernel_stefan_boltzmann_pw(const SpectralPoint& pt, double T);

KernelValue kernel_heat_A_ew(const SpectralPoint& pt, double T);
KernelValue kernel_heat_B1_pw(const SpectralPoint& pt, double T);
KernelValue kernel_heat_B2_pw(const SpectralPoint& pt, double T);
KernelValue kernel_heat_B3_pw(const SpectralPoint& pt, double T);

// Temperature-independent brackets shared by the kernels above: kernel =
// hbar/(4 pi^2) * k * n(omega, T) * bracket. Used by the observables to
// integrate once and weight by Bose differences afterwards.
struct PressureBrackets {
  double A = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;  // without the constant
  double SB = 0.0;  // the constant part of B3
};
struct HeatBrackets {
  double A = 0.0;
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;
};
PressureBrackets pressure_brackets(const SpectralPoint& pt);
HeatBrackets heat_brackets(const SpectralPoint& pt);

// Unified nonequilibrium kernel for m = 1 (heat) or m = 2 (force) with every
// operator replaced by its diagonal value. Same units and sign as the
// explicit kernels; summed over pairs it equals
// A(T1)-A(T2) + B1(T1)-B1(T2) + B2(T3)-B2(T1) + B3(T3)-B3(T2).
double kernel_delta_general_diagonal(int m, const SpectralPoint& pt, const ThermalTriple& T);

// ---- atom near a slab ----------------------------------------------------

enum class AtomTerm { PositionIndependent = 1, PropagativeInterference = 2, Evanescent = 3 };

// Bracketed integrand per dk (including the factor k and the n_ij weights) of
// F = -hbar/(4 pi^2 eps0 c^2) Im{ sum_p int d omega omega^2 alpha(omega) [...] }.
// Slab at T1 occupies z < 0, atom at T2 sits at z_a, environment at T3.
// Terms 1 and 2 are propagative, term 3 evanescent.
cplx kernel_atom(double omega, double k, Polarization p, const SlabCoefficients& slab, double z_a,
                 const ThermalTriple& T, AtomTerm which);

// ---- a single body in the environment -----------------------------------

// m = 1: absorbed power, m = 2: z force, per d omega dk (propagative only).
double kernel_body_alone(int m, double omega, double k, Polarization p, const DiagonalScattering& s, double T1,
                         double T3);

}  // namespace casimir
