#pragma once

#include <complex>
#include <limits>

#include "casimir/materials.hpp"
#include "casimir/waves.hpp"

namespace casimir {

inline constexpr double kInfiniteThickness = std::numeric_limits<double>::infinity();

struct SlabSpec {
  DielectricModel material;
  double thickness = kInfiniteThickness;  // m; +inf is the half-space sentinel

  bool infinite() const { return thickness == kInfiniteThickness; }
  // DomainError if thickness <= 0 or NaN, or if an infinite slab is lossless
  // (the limit of rho, tau is then ill defined).
  void validate() const;
};

// Single-interface vacuum/medium coefficients. Degenerate denominators raise
// EvaluationError with (omega, k, p).
cplx fresnel_r(Polarization p, cplx eps, double omega, double k);
cplx fresnel_t(Polarization p, cplx eps, double omega, double k);     // vacuum -> medium
cplx fresnel_tbar(Polarization p, cplx eps, double omega, double k);  // medium -> vacuum

struct SlabCoefficients {
  cplx rho;
  cplx tau;
};

// rho = r (1 - e^{2i kz1 d}) / (1 - r^2 e^{2i kz1 d}),
// tau = t tbar e^{i kz1 d} / (1 - r^2 e^{2i kz1 d}).
// The internal exponential is set to 0 once Im(kz1) d > 700.
SlabCoefficients slab_coefficients(const SlabSpec& slab, Polarization p, double omega, double k);
// Same with eps(omega) supplied by the caller (ignored for sentinel materials).
SlabCoefficients slab_coefficients(const SlabSpec& slab, cplx eps, Polarization p, double omega, double k);

// Real reflection amplitude at imaginary frequency i xi and transverse
// wavevector kappa. eps_ixi is eps(i xi); pass +inf for a conductor at xi = 0.
double slab_reflection_imag_axis(const SlabSpec& slab, double eps_ixi, Polarization p, double xi, double kappa);

// Diagonal amplitudes of one body in a chosen frame. rho_plus reflects waves
// arriving from +z, rho_minus waves arriving from -z; z_ref is the position,
// in frame coordinates, of the face the slab coefficients refer to.
struct DiagonalScattering {
  cplx rho_plus;
  cplx rho_minus;
  cplx tau_plus;
  cplx tau_minus;
  double z_ref = 0.0;
};

// Moves the frame origin to `shift` (old coordinates): rho_plus gains
// e^{2i kz shift}, rho_minus gains e^{-2i kz shift}, tau is unchanged.
DiagonalScattering translate_slab(const DiagonalScattering& base, double shift, double omega, double k);

// Body 1 in -delta1 < z < 0 and body 2 in d < z < d + delta2, origin at the
// facing surface of body 1. The outer-face amplitudes (body 1 rho_minus, body
// 2 rho_plus) only enter the propagative sector; for evanescent modes they
// would overflow and are returned as NaN. With infinite thickness the outer
// face does not exist and its amplitude is stored without phase.
struct SlabPairLayout {
  SlabSpec body1;
  SlabSpec body2;
  double d = 0.0;  // gap between the facing surfaces, m

  void validate() const;
};

struct SlabPairScattering {
  DiagonalScattering body1;
  DiagonalScattering body2;
};
SlabPairScattering slab_pair_frame(const SlabCoefficients& s1, double delta1, const SlabCoefficients& s2,
                                   double delta2, double d, double omega, double k);

SlabPairScattering slab_pair_frame(const SlabPairLayout& layout, Polarization p, double omega, double k);

// ---- atom elements (test utilities) --------------------------------------

struct PlaneWave {
  double kx = 0.0;
  double ky = 0.0;
  Polarization p = Polarization::TE;
};

// <k,p| R_A^phi |k',p'> for an atom at (0, 0, z_A), phi = +1 or -1.
// kz = 0 for the outgoing mode raises DomainError.
cplx atom_reflection_element(cplx alpha, double z_a, int phi, const PlaneWave& out, const PlaneWave& in,
                             double omega);
// <k,p| T~_A^phi |k',p'>.
cplx atom_transmission_element(cplx alpha, double z_a, int phi, const PlaneWave& out, const PlaneWave& in,
                               double omega);

// Unconjugated dot product eps_p^phi(k) . eps_p'^phi'(k').
cplx polarization_dot(const PlaneWave& a, int phi_a, const PlaneWave& b, int phi_b, double omega);

struct ReciprocityCheck {
  bool passed = false;
  double residual = 0.0;
};

// Compares kz <k,p|S|k',p'> with kz' (-1)^{p+p'} <-k',p'|S|-k,p>, residual
// normalised by the larger side. `forward` is <k,p|S|k',p'>, `backward` is
// <-k',p'|S|-k,p>.
ReciprocityCheck check_reciprocity(cplx forward, cplx backward, const PlaneWave& k, const PlaneWave& kprime,
                                   double omega, double threshold = 1e-12);

}  // namespace casimir
