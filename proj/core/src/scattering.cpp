#include "casimir/scattering.hpp"

#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::c;

namespace {

constexpr double kGuard = 700.0;

cplx sqrt_upper(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

cplx checked_ratio(cplx num, cplx den, Polarization p, double omega, double k, const char* what) {
  if (den == cplx(0.0, 0.0))
    throw EvaluationError(std::string(what) + ": vanishing denominator", omega, k, index_of(p));
  return num / den;
}

struct Interface {
  cplx r, t, tbar, kz1;
};

Interface interface(Polarization p, cplx eps, double omega, double k) {
  const cplx kz = kz_vacuum(omega, k);
  const cplx kz1 = kz_medium(eps, omega, k);
  Interface out;
  out.kz1 = kz1;
  if (p == Polarization::TE) {
    const cplx den = kz + kz1;
    out.r = checked_ratio(kz - kz1, den, p, omega, k, "fresnel_r");
    out.t = checked_ratio(2.0 * kz, den, p, omega, k, "fresnel_t");
    out.tbar = checked_ratio(2.0 * kz1, den, p, omega, k, "fresnel_tbar");
  } else {
    const cplx den = eps * kz + kz1;
    const cplx n = sqrt_upper(eps);
    out.r = checked_ratio(eps * kz - kz1, den, p, omega, k, "fresnel_r");
    out.t = checked_ratio(2.0 * n * kz, den, p, omega, k, "fresnel_t");
    out.tbar = checked_ratio(2.0 * n * kz1, den, p, omega, k, "fresnel_tbar");
  }
  return out;
}

}  // namespace

void SlabSpec::validate() const {
  if (!(thickness > 0.0)) throw DomainError("slab thickness must be positive (or infinite)");
  if (infinite() && !material.is_lossy() && !material.is_perfect_mirror())
    throw DomainError("an infinitely thick slab needs a lossy material or an ideal mirror");
}

cplx fresnel_r(Polarization p, cplx eps, double omega, double k) { return interface(p, eps, omega, k).r; }
cplx fresnel_t(Polarization p, cplx eps, double omega, double k) { return interface(p, eps, omega, k).t; }
cplx fresnel_tbar(Polarization p, cplx eps, double omega, double k) {
  return interface(p, eps, omega, k).tbar;
}

SlabCoefficients slab_coefficients(const SlabSpec& slab, cplx eps, Polarization p, double omega, double k) {
  if (slab.material.is_perfect_mirror()) return {p == Polarization::TE ? -1.0 : 1.0, 0.0};
  if (slab.material.is_perfect_absorber()) return {0.0, 0.0};
  const Interface f = interface(p, eps, omega, k);
  if (slab.infinite()) return {f.r, 0.0};
  const double delta = slab.thickness;
  if (f.kz1.imag() * delta > kGuard) return {f.r, 0.0};
  const cplx e1 = std::exp(cplx(0.0, 1.0) * f.kz1 * delta);
  const cplx e2 = e1 * e1;
  const cplx den = 1.0 - f.r * f.r * e2;
  if (den == cplx(0.0, 0.0)) throw EvaluationError("slab_coefficients: vanishing denominator", omega, k, index_of(p));
  return {f.r * (1.0 - e2) / den, f.t * f.tbar * e1 / den};
}

SlabCoefficients slab_coefficients(const SlabSpec& slab, Polarization p, double omega, double k) {
  if (slab.material.is_sentinel()) return slab_coefficients(slab, cplx(1.0, 0.0), p, omega, k);
  return slab_coefficients(slab, permittivity(slab.material, omega), p, omega, k);
}

double slab_reflection_imag_axis(const SlabSpec& slab, double eps_ixi, Polarization p, double xi, double kappa) {
  if (slab.material.is_perfect_mirror()) return p == Polarization::TE ? -1.0 : 1.0;
  if (slab.material.is_perfect_absorber()) return 0.0;
  const double x0 = xi / c;
  const double q = std::sqrt(x0 * x0 + kappa * kappa);
  double r = 0.0;
  double q1 = q;
  if (std::isinf(eps_ixi)) {
    // Conductor at xi = 0: TM fully reflecting, TE transparent.
    if (p == Polarization::TE) return 0.0;
    r = 1.0;
  } else {
    q1 = std::sqrt(eps_ixi * x0 * x0 + kappa * kappa);
    r = p == Polarization::TE ? (q - q1) / (q + q1) : (eps_ixi * q - q1) / (eps_ixi * q + q1);
  }
  if (slab.infinite() || q1 * slab.thickness > kGuard) return r;
  const double e2 = std::exp(-2.0 * q1 * slab.thickness);
  return r * (1.0 - e2) / (1.0 - r * r * e2);
}

DiagonalScattering translate_slab(const DiagonalScattering& base, double shift, double omega, double k) {
  if (shift == 0.0) return base;
  const cplx kz = kz_vacuum(omega, k);
  const cplx ph = std::exp(cplx(0.0, 2.0) * kz * shift);
  DiagonalScattering out = base;
  out.rho_plus = base.rho_plus * ph;
  out.rho_minus = base.rho_minus / ph;
  out.z_ref = base.z_ref - shift;
  return out;
}

SlabPairScattering slab_pair_frame(const SlabCoefficients& s1, double delta1, const SlabCoefficients& s2,
                                   double delta2, double d, double omega, double k) {
  const cplx kz = kz_vacuum(omega, k);
  const cplx i2kz(-2.0 * kz.imag(), 2.0 * kz.real());
  const bool evanescent = sector_of(omega, k) == Sector::Evanescent;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SlabPairScattering out;
  auto far = [&](const cplx& rho, double dist) -> cplx {
    if (std::isinf(dist)) return rho;
    if (evanescent) return {nan, nan};
    return rho * std::exp(i2kz * dist);
  };
  out.body1 = {s1.rho, far(s1.rho, -delta1), s1.tau, s1.tau, 0.0};
  out.body2 = {far(s2.rho, -(d + delta2)), s2.rho * std::exp(i2kz * d), s2.tau, s2.tau, d};
  return out;
}

void SlabPairLayout::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("separation d must be positive and finite");
  body1.validate();
  body2.validate();
}

SlabPairScattering slab_pair_frame(const SlabPairLayout& layout, Polarization p, double omega, double k) {
  return slab_pair_frame(slab_coefficients(layout.body1, p, omega, k), layout.body1.thickness,
                         slab_coefficients(layout.body2, p, omega, k), layout.body2.thickness, layout.d, omega, k);
}

// ---- atom elements --------------------------------------------------------

namespace {

struct Vec3 {
  cplx x, y, z;
};

Vec3 pol_vector(const PlaneWave& w, int phi, double omega) {
  const double k = std::hypot(w.kx, w.ky);
  // k = 0: the in-plane direction is arbitrary, take x.
  const double ux = k > 0.0 ? w.kx / k : 1.0;
  const double uy = k > 0.0 ? w.ky / k : 0.0;
  if (w.p == Polarization::TE) return {-uy, ux, 0.0};
  const cplx kz = kz_vacuum(omega, k);
  const double s = c / omega;
  const cplx a = s * static_cast<double>(phi) * kz;
  return {a * ux, a * uy, -s * k};
}

cplx dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

cplx atom_prefactor(cplx alpha, double omega, cplx kz) {
  return cplx(0.0, 1.0) * omega * omega * alpha / (2.0 * constants::epsilon0 * c * c * kz);
}

}  // namespace

cplx polarization_dot(const PlaneWave& a, int phi_a, const PlaneWave& b, int phi_b, double omega) {
  return dot(pol_vector(a, phi_a, omega), pol_vector(b, phi_b, omega));
}

cplx atom_reflection_element(cplx alpha, double z_a, int phi, const PlaneWave& out, const PlaneWave& in,
                             double omega) {
  const cplx kz = kz_vacuum(omega, std::hypot(out.kx, out.ky));
  const cplx kzp = kz_vacuum(omega, std::hypot(in.kx, in.ky));
  if (kz == cplx(0.0, 0.0)) throw DomainError("atom element undefined at kz = 0");
  const cplx d = polarization_dot(out, phi, in, -phi, omega);
  return atom_prefactor(alpha, omega, kz) * d * std::exp(cplx(0.0, -phi) * (kz + kzp) * z_a);
}

cplx atom_transmission_element(cplx alpha, double z_a, int phi, const PlaneWave& out, const PlaneWave& in,
                               double omega) {
  const cplx kz = kz_vacuum(omega, std::hypot(out.kx, out.ky));
  const cplx kzp = kz_vacuum(omega, std::hypot(in.kx, in.ky));
  if (kz == cplx(0.0, 0.0)) throw DomainError("atom element undefined at kz = 0");
  const cplx d = polarization_dot(out, phi, in, phi, omega);
  return atom_prefactor(alpha, omega, kz) * d * std::exp(cplx(0.0, -phi) * (kz - kzp) * z_a);
}

ReciprocityCheck check_reciprocity(cplx forward, cplx backward, const PlaneWave& k, const PlaneWave& kprime,
                                   double omega, double threshold) {
  const cplx kz = kz_vacuum(omega, std::hypot(k.kx, k.ky));
  const cplx kzp = kz_vacuum(omega, std::hypot(kprime.kx, kprime.ky));
  const double sign = (index_of(k.p) + index_of(kprime.p)) % 2 == 0 ? 1.0 : -1.0;
  const cplx lhs = kz * forward;
  const cplx rhs = kzp * sign * backward;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  ReciprocityCheck out;
  out.residual = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  out.passed = out.residual < threshold;
  return out;
}

}  // namespace casimir
