#include "casimir/kernels.hpp"

#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::hbar;
using constants::pi;

namespace {

constexpr double kPref = hbar / (4.0 * pi * pi);

void require(const SpectralPoint& pt, Sector s, const char* what) {
  if (pt.sector() != s)
    throw DomainError(std::string(what) +
                      (s == Sector::Evanescent ? " requires an evanescent point (k > omega/c)"
                                               : " requires a propagative point (k <= omega/c)"));
}

KernelValue make(Term t, const SpectralPoint& pt, double T, double bracket) {
  const double n = bose_n(pt.omega, T);
  return {n == 0.0 ? 0.0 : kPref * pt.k * n * bracket, t};
}

cplx ipow(cplx z, int n) {
  if (n == -1) return 1.0 / z;
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

std::string_view term_tag(Term t) {
  switch (t) {
    case Term::EquilibriumMatsubara: return "eq";
    case Term::PressureA: return "A_ew";
    case Term::PressureB1: return "B1";
    case Term::PressureB2: return "B2";
    case Term::PressureB3: return "B3";
    case Term::StefanBoltzmann: return "stefan_boltzmann";
    case Term::HeatA: return "A_ew";
    case Term::HeatB1: return "B1";
    case Term::HeatB2: return "B2";
    case Term::HeatB3: return "B3";
    case Term::AtomPositionIndependent: return "position_independent";
    case Term::AtomPropagativeInterference: return "propagative_interference";
    case Term::AtomEvanescent: return "evanescent";
    case Term::BodyAlone: return "body_alone";
    case Term::GeneralDiagonal: return "general_diagonal";
  }
  return "unknown";
}

SpectralPoint make_spectral_point(double omega, double k, Polarization p, const DiagonalScattering& body1,
                                  const DiagonalScattering& body2) {
  SpectralPoint pt;
  pt.omega = omega;
  pt.k = k;
  pt.p = p;
  pt.kz = kz_vacuum(omega, k);
  pt.body1 = body1;
  pt.body2 = body2;
  pt.D = 1.0 - body1.rho_plus * body2.rho_minus;
  return pt;
}

SpectralPoint slab_pair_point(const SlabPairLayout& layout, Polarization p, double omega, double k) {
  const auto s = slab_pair_frame(layout, p, omega, k);
  return make_spectral_point(omega, k, p, s.body1, s.body2);
}

double kernel_equilibrium_matsubara(double xi, double kappa, double rho1, double rho2, double d) {
  const double x0 = xi / constants::c;
  const double q = std::sqrt(x0 * x0 + kappa * kappa);
  const double x = rho1 * rho2 * std::exp(-2.0 * q * d);
  if (x == 0.0) return 0.0;
  return -kappa * q * x / (1.0 - x);
}

// ---- brackets -------------------------------------------------------------

namespace {

// Zero when x is within rounding of a cancellation between terms of total
// size `scale`. Lossless bodies then give exactly zero heat instead of noise
// the adaptive quadrature would chase.
double flush(double x, double scale) {
  return std::abs(x) <= 16.0 * std::numeric_limits<double>::epsilon() * scale ? 0.0 : x;
}

}  // namespace

PressureBrackets pressure_brackets(const SpectralPoint& pt) {
  PressureBrackets b;
  const double D2 = std::norm(pt.D);
  const cplx r1 = pt.body1.rho_plus;
  const cplx r2 = pt.body2.rho_minus;
  if (pt.sector() == Sector::Evanescent) {
    b.A = 2.0 * pt.kz.imag() * std::imag(r1 * std::conj(r2)) / D2;
    return b;
  }
  const double kz = pt.kz.real();
  const double a1 = std::norm(r1), a2 = std::norm(r2);
  const double t1 = std::norm(pt.body1.tau_minus), t2 = std::norm(pt.body2.tau_minus);
  const cplx inter = std::conj(pt.body1.rho_minus) * r2 * pt.body1.tau_plus * pt.body1.tau_minus / pt.D;
  b.B1 = -kz * (a2 - a1 + t1 * (1.0 - a2)) / D2;
  b.B2 = -kz * (t1 * (1.0 + a2 * (1.0 - t1)) / D2 - a1 - 2.0 * inter.real());
  b.B3 = -kz * t2 * (1.0 + a1 - t1) / D2;
  b.SB = kz;
  return b;
}

HeatBrackets heat_brackets(const SpectralPoint& pt) {
  HeatBrackets b;
  const double w = pt.omega;
  const double D2 = std::norm(pt.D);
  const cplx r1 = pt.body1.rho_plus;
  const cplx r2 = pt.body2.rho_minus;
  if (pt.sector() == Sector::Evanescent) {
    b.A = 2.0 * w * (std::real(r1 * r2) - std::real(r1 * std::conj(r2))) / D2;
    return b;
  }
  const double a1 = std::norm(r1), a2 = std::norm(r2);
  const double t1 = std::norm(pt.body1.tau_minus), t2 = std::norm(pt.body2.tau_minus);
  const cplx inter = std::conj(pt.body1.rho_minus) * r2 * pt.body1.tau_plus * pt.body1.tau_minus / pt.D;
  const double x1 = flush(a1 + a2 - 1.0 - a1 * a2 + t1 * (1.0 - a2), 1.0 + a1 + a2 + a1 * a2 + t1);
  const double x2 = flush(1.0 - a1 - t1 * (1.0 - a2 * (1.0 - t1)) / D2 - 2.0 * inter.real(),
                          1.0 + a1 + t1 * (1.0 + a2) / D2 + 2.0 * std::abs(inter));
  const double x3 = flush(1.0 - a1 - t1, 1.0 + a1 + t1);
  b.B1 = w * x1 / D2;
  b.B2 = w * x2;
  b.B3 = w * t2 * x3 / D2;
  return b;
}

KernelValue kernel_A_ew(const SpectralPoint& pt, double T) {
  require(pt, Sector::Evanescent, "kernel_A_ew");
  return make(Term::PressureA, pt, T, pressure_brackets(pt).A);
}
KernelValue kernel_B1_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_B1_pw");
  return make(Term::PressureB1, pt, T, pressure_brackets(pt).B1);
}
KernelValue kernel_B2_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_B2_pw");
  return make(Term::PressureB2, pt, T, pressure_brackets(pt).B2);
}
KernelValue kernel_B3_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_B3_pw");
  const auto b = pressure_brackets(pt);
  return make(Term::PressureB3, pt, T, b.B3 + b.SB);
}
KernelValue kernel_stefan_boltzmann_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_stefan_boltzmann_pw");
  return make(Term::StefanBoltzmann, pt, T, pressure_brackets(pt).SB);
}
KernelValue kernel_heat_A_ew(const SpectralPoint& pt, double T) {
  require(pt, Sector::Evanescent, "kernel_heat_A_ew");
  return make(Term::HeatA, pt, T, heat_brackets(pt).A);
}
KernelValue kernel_heat_B1_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_heat_B1_pw");
  return make(Term::HeatB1, pt, T, heat_brackets(pt).B1);
}
KernelValue kernel_heat_B2_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_heat_B2_pw");
  return make(Term::HeatB2, pt, T, heat_brackets(pt).B2);
}
KernelValue kernel_heat_B3_pw(const SpectralPoint& pt, double T) {
  require(pt, Sector::Propagative, "kernel_heat_B3_pw");
  return make(Term::HeatB3, pt, T, heat_brackets(pt).B3);
}

// ---- unified diagonal kernel ----------------------------------------------

double kernel_delta_general_diagonal(int m, const SpectralPoint& pt, const ThermalTriple& T) {
  if (m != 1 && m != 2) throw DomainError("m must be 1 (heat) or 2 (force)");
  const double w = pt.omega;
  const double n12 = n_diff(w, T.T1, T.T2);
  const double n13 = n_diff(w, T.T1, T.T3);
  const double n23 = n_diff(w, T.T2, T.T3);
  if (n12 == 0.0 && n13 == 0.0 && n23 == 0.0) return 0.0;

  const bool ew = pt.sector() == Sector::Evanescent;
  const cplx kz = pt.kz;
  const double sm = m % 2 == 0 ? 1.0 : -1.0;  // (-1)^m
  // Projectors reduce to kz^n on their own sector and 0 elsewhere.
  auto P = [&](int n) { return ew ? cplx(0.0) : ipow(kz, n); };
  auto Pe = [&](int n) { return ew ? ipow(kz, n) : cplx(0.0); };
  auto f = [&](int a, cplx R) -> cplx {
    const cplx Rc = std::conj(R);
    if (a == -1) return -R * P(-1) * Rc + R * Pe(-1) - Pe(-1) * Rc;
    return sm * Rc * P(m) * R + Rc * Pe(m) + sm * Pe(m) * R;
  };
  auto g = [&](int a, cplx Tt) { return (std::norm(Tt) - 1.0) * P(a == -1 ? -1 : m); };

  const cplx R1p = pt.body1.rho_plus;
  const cplx R2m = pt.body2.rho_minus;
  const cplx T1p = pt.body1.tau_plus;
  const cplx T1m = pt.body1.tau_minus;
  const cplx T2m = pt.body2.tau_minus;
  const cplx U = 1.0 / pt.D;
  const double U2 = std::norm(U);
  const cplx um = (U2 - 1.0) * P(m);
  const cplx u1 = (U2 - 1.0) * P(-1);

  cplx t = 0.0;
  if (n12 != 0.0) {
    t += 0.5 * n12 *
         ((U2 * (2.0 * g(m, T1m) - f(m, R1p)) + um) * (P(-1) + f(-1, R2m)) +
          sm * (U2 * f(-1, R1p) + u1) * (P(m) + f(m, R2m)));
  }
  if (n13 != 0.0) {
    cplx s = -sm * (U2 * g(-1, T1p) + u1) * (P(m) + f(m, R2m)) + (U2 * g(m, T1m) + um) * R2m * P(-1) * std::conj(R2m) +
             U2 * (P(m) + g(m, T1m)) * R2m * g(-1, T1p) * std::conj(R2m);
    if (!ew) {
      // Outer-face terms exist only for propagative waves.
      const cplx R1m = pt.body1.rho_minus;
      const cplx hc = P(m) * R1m * P(-1) * std::conj(T1p) * std::conj(U) * std::conj(R2m) * std::conj(T1m);
      s += P(m) * R1m * P(-1) * std::conj(R1m) + hc + std::conj(hc);
    }
    t += n13 * s;
  }
  if (n23 != 0.0) t += n23 * U2 * (g(m, T1m) - f(m, R1p)) * (P(-1) + g(-1, T2m));

  const double sign = m == 1 ? 1.0 : -1.0;  // (-1)^{m+1}
  const double wpow = m == 1 ? w : 1.0;      // omega^{2-m}
  return sign * kPref * wpow * pt.k * t.real();
}

// ---- atom ----------------------------------------------------------------

cplx kernel_atom(double omega, double k, Polarization p, const SlabCoefficients& slab, double z_a,
                 const ThermalTriple& T, AtomTerm which) {
  const Sector s = sector_of(omega, k);
  const cplx kz = kz_vacuum(omega, k);
  switch (which) {
    case AtomTerm::PositionIndependent: {
      if (s != Sector::Propagative) throw DomainError("atom term 1 is propagative only");
      const double n13 = n_diff(omega, T.T1, T.T3);
      if (n13 == 0.0) return 0.0;
      return n13 * k * (std::norm(slab.rho) + std::norm(slab.tau) - 1.0);
    }
    case AtomTerm::PropagativeInterference: {
      if (s != Sector::Propagative) throw DomainError("atom term 2 is propagative only");
      const double n31 = n_diff(omega, T.T3, T.T1);
      const double n23 = n_diff(omega, T.T2, T.T3);
      if (n31 == 0.0 && n23 == 0.0) return 0.0;
      const cplx ph = std::exp(cplx(0.0, 2.0) * kz * z_a);
      return k * pol_dot_pm(p, omega, k) * (n31 * slab.rho * ph + n23 * std::conj(slab.rho) * std::conj(ph));
    }
    case AtomTerm::Evanescent: {
      if (s != Sector::Evanescent) throw DomainError("atom term 3 is evanescent only");
      const double n21 = n_diff(omega, T.T2, T.T1);
      if (n21 == 0.0) return 0.0;
      return n21 * k * pol_dot_pm(p, omega, k) * std::conj(slab.rho) * std::exp(-2.0 * kz.imag() * z_a);
    }
  }
  throw DomainError("unknown atom term");
}

// ---- body alone ----------------------------------------------------------

double kernel_body_alone(int m, double omega, double k, Polarization, const DiagonalScattering& s, double T1,
                         double T3) {
  if (m != 1 && m != 2) throw DomainError("m must be 1 (heat) or 2 (force)");
  if (sector_of(omega, k) != Sector::Propagative) throw DomainError("body-alone kernel is propagative only");
  const double n31 = n_diff(omega, T3, T1);
  if (n31 == 0.0) return 0.0;
  const double kz = kz_vacuum(omega, k).real();
  const double sm = m == 2 ? 1.0 : -1.0;
  const double br = flush(sm * std::norm(s.rho_plus) - std::norm(s.rho_minus) + sm * (std::norm(s.tau_plus) - 1.0) -
                              (std::norm(s.tau_minus) - 1.0),
                          2.0 + std::norm(s.rho_plus) + std::norm(s.rho_minus) + std::norm(s.tau_plus) +
                              std::norm(s.tau_minus));
  const double sign = m == 1 ? 1.0 : -1.0;
  const double factor = m == 1 ? omega : kz;  // omega^{2-m} kz^{m-1}
  return sign * kPref * n31 * factor * k * br;
}

}  // namespace casimir
