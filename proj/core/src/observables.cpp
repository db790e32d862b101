#include "casimir/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

namespace {

constexpr double kPref = hbar / (4.0 * pi * pi);
// Inner integrals run tighter than the outer one so their propagated error
// does not dominate.
constexpr double kInnerTighten = 0.1;

Tolerance inner_tolerance(const QuadratureConfig& cfg) {
  return {cfg.rel_tol * kInnerTighten, 0.0, cfg.max_subdivisions};
}

cplx eps_or_one(const SlabSpec& s, double omega) {
  return s.material.is_sentinel() ? cplx(1.0, 0.0) : permittivity(s.material, omega);
}

template <std::size_t N>
[[noreturn]] void fail(const std::string& what, const VecResult<N>& r, const std::vector<std::string>& names,
                       double scale) {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (r.error[i] > r.error[worst]) worst = i;
  std::ostringstream os;
  os << what << ": frequency integral did not converge (term " << names[worst] << ", worst panel ["
     << r.worst_lo * scale << ", " << r.worst_hi * scale << "] rad/s)";
  throw ConvergenceError(os.str(), r.worst_lo * scale, r.worst_hi * scale, r.worst_error);
}

ObservableResult assemble(const std::vector<std::string>& names, const double* values, const double* errors,
                          std::size_t n) {
  ObservableResult out;
  double e2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.terms.push_back({names[i], values[i], errors[i]});
    out.value += values[i];
    e2 += errors[i] * errors[i];
  }
  out.error = std::sqrt(e2);
  return out;
}

// Integrals over the two k sectors at one frequency. The propagative sector
// runs over kz in [0, omega/c] (k dk = kz dkz), the evanescent one over
// kappa = Im kz in (0, kappa_max] (k dk = kappa dkappa).
template <std::size_t N, class F>
VecResult<N> propagative(double omega, F&& per_k, const Tolerance& tol) {
  const double k0 = omega / c;
  auto g = [&](double kz) {
    const double k = std::min(k0, std::sqrt((k0 - kz) * (k0 + kz)));
    Vec<N> v = per_k(k);
    for (auto& x : v) x *= kz;
    return v;
  };
  return integrate_adaptive<N>(g, 0.0, k0, {}, tol);
}

template <std::size_t N, class F>
VecResult<N> evanescent(double omega, double kappa_max, F&& per_k, const Tolerance& tol) {
  const double k0 = omega / c;
  auto g = [&](double kappa) {
    const double k = std::max(std::nextafter(k0, 2.0 * k0 + 1.0), std::sqrt(k0 * k0 + kappa * kappa));
    Vec<N> v = per_k(k);
    for (auto& x : v) x *= kappa;
    return v;
  };
  return integrate_adaptive<N>(g, 0.0, kappa_max, {}, tol);
}

// The outer integral is carried out in x = omega / omega_ref so panel
// positions are O(1) numbers.
template <std::size_t N, class F>
VecResult<N> outer(F&& f, const OmegaGrid& grid, double omega_ref, const QuadratureConfig& cfg) {
  std::vector<double> bp;
  for (double w : grid.breakpoints) bp.push_back(w / omega_ref);
  auto g = [&](double x) {
    auto s = f(x * omega_ref);
    for (std::size_t i = 0; i < N; ++i) {
      s.value[i] *= omega_ref;
      s.error[i] *= omega_ref;
    }
    return s;
  };
  return integrate_adaptive<N>(g, 0.0, grid.omega_max / omega_ref, bp, tolerance_from(cfg));
}

double reference_omega(const OmegaGrid& g) {
  return g.breakpoints.empty() ? g.omega_max : g.breakpoints.front();
}

}  // namespace

const NamedTerm& ObservableResult::term(const std::string& name) const {
  for (const auto& t : terms)
    if (t.name == name) return t;
  throw DomainError("no term named '" + name + "'");
}

OmegaGrid omega_grid(const std::vector<double>& temperatures, const std::vector<DielectricModel>& materials,
                     const QuadratureConfig& cfg, const std::vector<double>& extra_resonances) {
  OmegaGrid g;
  double tmax = 0.0;
  std::vector<double> bp;
  for (double T : temperatures) {
    if (T <= 0.0) continue;
    tmax = std::max(tmax, T);
    const double w = k_B * T / hbar;
    for (double m : {0.3, 1.0, 3.0, 10.0}) bp.push_back(m * w);
  }
  double res_max = 0.0;
  std::vector<double> res = extra_resonances;
  for (const auto& m : materials) {
    auto r = resonance_frequencies(m);
    res.insert(res.end(), r.begin(), r.end());
  }
  for (double r : res) {
    bp.push_back(r);
    res_max = std::max(res_max, r);
  }
  g.omega_max = std::max(cfg.omega_max_factor * k_B * tmax / hbar, 10.0 * res_max);
  if (!(g.omega_max > 0.0)) g.omega_max = 1.0;
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  for (double b : bp)
    if (b > 0.0 && b < g.omega_max) g.breakpoints.push_back(b);
  return g;
}

// ---- equilibrium ----------------------------------------------------------

NamedTerm equilibrium_pressure(const SlabPairLayout& layout, double T, const QuadratureConfig& cfg) {
  layout.validate();
  cfg.validate();
  const double d = layout.d;
  const double qcut = cfg.evanescent_cut_factor / (2.0 * d);
  const Tolerance tol = inner_tolerance(cfg);
  auto eps_ixi = [](const SlabSpec& s, double xi) {
    if (s.material.is_sentinel()) return 1.0;
    return xi == 0.0 ? static_permittivity(s.material) : permittivity_imag_axis(s.material, xi);
  };
  auto term = [&](double xi) -> TermEstimate {
    const double e1 = eps_ixi(layout.body1, xi);
    const double e2 = eps_ixi(layout.body2, xi);
    const double x0 = xi / c;
    // q = xi/c + x; kappa dkappa = q dq.
    auto f = [&](double x) {
      const double q = x0 + x;
      const double kappa = std::sqrt(x * (2.0 * x0 + x));
      Vec<1> v{0.0};
      if (kappa == 0.0) return v;
      for (Polarization p : kPolarizations) {
        const double r1 = slab_reflection_imag_axis(layout.body1, e1, p, xi, kappa);
        const double r2 = slab_reflection_imag_axis(layout.body2, e2, p, xi, kappa);
        v[0] += kernel_equilibrium_matsubara(xi, kappa, r1, r2, d) * q / kappa;
      }
      return v;
    };
    auto r = integrate_adaptive<1>(f, 0.0, qcut, {}, tol);
    return {r.value[0], r.error[0]};
  };
  const auto s = matsubara_sum(T, term, cfg, c / (2.0 * d));
  return {"eq", s.value / pi, s.error / pi};
}

// ---- slab-slab, explicit kernels ----------------------------------------------

namespace {

struct PairFrequency {
  const SlabPairLayout& layout;
  double omega;
  cplx eps1, eps2;

  PairFrequency(const SlabPairLayout& l, double w)
      : layout(l), omega(w), eps1(eps_or_one(l.body1, w)), eps2(eps_or_one(l.body2, w)) {}

  SpectralPoint point(Polarization p, double k) const {
    const auto s1 = slab_coefficients(layout.body1, eps1, p, omega, k);
    const auto s2 = slab_coefficients(layout.body2, eps2, p, omega, k);
    const auto f = slab_pair_frame(s1, layout.body1.thickness, s2, layout.body2.thickness, layout.d, omega, k);
    return make_spectral_point(omega, k, p, f.body1, f.body2);
  }
};

}  // namespace

ObservableResult observable_pressure(const SlabPairLayout& layout, const ThermalTriple& T,
                                     const QuadratureConfig& cfg) {
  layout.validate();
  T.validate();
  cfg.validate();
  const Tolerance tol = inner_tolerance(cfg);
  const double kappa_max = cfg.evanescent_cut_factor / (2.0 * layout.d);

  // Reported pressure is minus the z force on body 1.
  auto integrand = [&](double omega) {
    Sample<5> s;
    const double n12 = n_diff(omega, T.T1, T.T2);
    const double n31 = n_diff(omega, T.T3, T.T1);
    const double n32 = n_diff(omega, T.T3, T.T2);
    if (n12 == 0.0 && n31 == 0.0 && n32 == 0.0) return s;
    const PairFrequency pf(layout, omega);
    if (n31 != 0.0 || n32 != 0.0 || n12 != 0.0) {
      auto pw = propagative<4>(
          omega,
          [&](double k) {
            Vec<4> v{};
            for (Polarization p : kPolarizations) {
              const auto b = pressure_brackets(pf.point(p, k));
              v[0] += b.B1;
              v[1] += b.B2;
              v[2] += b.B3;
              v[3] += b.SB;
            }
            return v;
          },
          tol);
      const double w[4] = {n12, n31, n32, n32};
      for (int i = 0; i < 4; ++i) {
        s.value[1 + i] = -kPref * w[i] * pw.value[i];
        s.error[1 + i] = kPref * std::abs(w[i]) * pw.error[i];
      }
    }
    if (n12 != 0.0) {
      auto ew = evanescent<1>(
          omega, kappa_max,
          [&](double k) {
            Vec<1> v{};
            for (Polarization p : kPolarizations) v[0] += pressure_brackets(pf.point(p, k)).A;
            return v;
          },
          tol);
      s.value[0] = -kPref * n12 * ew.value[0];
      s.error[0] = kPref * std::abs(n12) * ew.error[0];
    }
    return s;
  };

  const auto grid = omega_grid({T.T1, T.T2, T.T3}, {layout.body1.material, layout.body2.material}, cfg);
  const auto r = outer<5>(integrand, grid, reference_omega(grid), cfg);
  static const std::vector<std::string> names = {"A_ew", "B1", "B2", "B3", "stefan_boltzmann"};
  if (!r.converged) fail("pressure", r, names, reference_omega(grid));

  const NamedTerm eq1 = equilibrium_pressure(layout, T.T1, cfg);
  const NamedTerm eq2 = T.T2 == T.T1 ? eq1 : equilibrium_pressure(layout, T.T2, cfg);
  std::vector<std::string> all = {"eq_T1", "eq_T2"};
  all.insert(all.end(), names.begin(), names.end());
  double values[7] = {0.5 * eq1.value, 0.5 * eq2.value};
  double errors[7] = {0.5 * eq1.error, 0.5 * eq2.error};
  for (int i = 0; i < 5; ++i) {
    values[2 + i] = r.value[i];
    errors[2 + i] = r.error[i];
  }
  return assemble(all, values, errors, 7);
}

ObservableResult observable_heat(const SlabPairLayout& layout, const ThermalTriple& T, const QuadratureConfig& cfg) {
  layout.validate();
  T.validate();
  cfg.validate();
  const Tolerance tol = inner_tolerance(cfg);
  const double kappa_max = cfg.evanescent_cut_factor / (2.0 * layout.d);

  auto integrand = [&](double omega) {
    Sample<4> s;
    const double n12 = n_diff(omega, T.T1, T.T2);
    const double n31 = n_diff(omega, T.T3, T.T1);
    const double n32 = n_diff(omega, T.T3, T.T2);
    if (n12 == 0.0 && n31 == 0.0 && n32 == 0.0) return s;
    const PairFrequency pf(layout, omega);
    auto pw = propagative<3>(
        omega,
        [&](double k) {
          Vec<3> v{};
          for (Polarization p : kPolarizations) {
            const auto b = heat_brackets(pf.point(p, k));
            v[0] += b.B1;
            v[1] += b.B2;
            v[2] += b.B3;
          }
          return v;
        },
        tol);
    const double w[3] = {n12, n31, n32};
    for (int i = 0; i < 3; ++i) {
      s.value[1 + i] = kPref * w[i] * pw.value[i];
      s.error[1 + i] = kPref * std::abs(w[i]) * pw.error[i];
    }
    if (n12 != 0.0) {
      auto ew = evanescent<1>(
          omega, kappa_max,
          [&](double k) {
            Vec<1> v{};
            for (Polarization p : kPolarizations) v[0] += heat_brackets(pf.point(p, k)).A;
            return v;
          },
          tol);
      s.value[0] = kPref * n12 * ew.value[0];
      s.error[0] = kPref * std::abs(n12) * ew.error[0];
    }
    return s;
  };

  const auto grid = omega_grid({T.T1, T.T2, T.T3}, {layout.body1.material, layout.body2.material}, cfg);
  const auto r = outer<4>(integrand, grid, reference_omega(grid), cfg);
  static const std::vector<std::string> names = {"A_ew", "B1", "B2", "B3"};
  if (!r.converged) fail("heat", r, names, reference_omega(grid));
  return assemble(names, r.value.data(), r.error.data(), 4);
}

ObservableResult observable_delta_general(int m, const SlabPairLayout& layout, const ThermalTriple& T,
                                          const QuadratureConfig& cfg, double frame_shift) {
  if (m != 1 && m != 2) throw DomainError("m must be 1 (heat) or 2 (force)");
  layout.validate();
  T.validate();
  cfg.validate();
  const Tolerance tol = inner_tolerance(cfg);
  const double kappa_max = cfg.evanescent_cut_factor / (2.0 * layout.d);
  const double sign = m == 2 ? -1.0 : 1.0;  // pressure is reported as minus the force

  auto integrand = [&](double omega) {
    Sample<2> s;
    if (n_diff(omega, T.T1, T.T2) == 0.0 && n_diff(omega, T.T1, T.T3) == 0.0 && n_diff(omega, T.T2, T.T3) == 0.0)
      return s;
    const PairFrequency pf(layout, omega);
    auto per_k = [&](double k) {
      Vec<1> v{};
      for (Polarization p : kPolarizations) {
        SpectralPoint pt = pf.point(p, k);
        if (frame_shift != 0.0)
          pt = make_spectral_point(omega, k, p, translate_slab(pt.body1, frame_shift, omega, k),
                                   translate_slab(pt.body2, frame_shift, omega, k));
        v[0] += kernel_delta_general_diagonal(m, pt, T) / k;
      }
      return v;
    };
    auto pw = propagative<1>(omega, per_k, tol);
    auto ew = evanescent<1>(omega, kappa_max, per_k, tol);
    s.value = {sign * pw.value[0], sign * ew.value[0]};
    s.error = {pw.error[0], ew.error[0]};
    return s;
  };
  const auto grid = omega_grid({T.T1, T.T2, T.T3}, {layout.body1.material, layout.body2.material}, cfg);
  const auto r = outer<2>(integrand, grid, reference_omega(grid), cfg);
  static const std::vector<std::string> names = {"propagative", "evanescent"};
  if (!r.converged) fail(m == 2 ? "pressure (unified kernel)" : "heat (unified kernel)", r, names,
                         reference_omega(grid));
  return assemble(names, r.value.data(), r.error.data(), 2);
}

// ---- atom ----------------------------------------------------------------------

Polarizability Polarizability::static_value(double alpha0) {
  if (!std::isfinite(alpha0)) throw DomainError("polarizability must be finite");
  Polarizability a;
  a.kind = Kind::Static;
  a.alpha0 = alpha0;
  return a;
}

Polarizability Polarizability::oscillator(double alpha0, double omega_a, double gamma) {
  if (!std::isfinite(alpha0) || !(omega_a > 0.0) || !(gamma >= 0.0))
    throw DomainError("oscillator polarizability needs finite alpha0, omega_a > 0, gamma >= 0");
  Polarizability a;
  a.kind = Kind::Oscillator;
  a.alpha0 = alpha0;
  a.omega_a = omega_a;
  a.gamma = gamma;
  return a;
}

std::complex<double> Polarizability::operator()(double omega) const {
  if (kind == Kind::Static) return alpha0;
  const double w2 = omega_a * omega_a;
  return alpha0 * w2 / std::complex<double>(w2 - omega * omega, -gamma * omega);
}

ObservableResult observable_atom_force(const SlabSpec& slab, const Polarizability& alpha, double z_a,
                                       const ThermalTriple& T, const QuadratureConfig& cfg) {
  slab.validate();
  T.validate();
  cfg.validate();
  if (!(z_a > 0.0) || !std::isfinite(z_a)) throw DomainError("atom height z_a must be positive");
  const Tolerance tol = inner_tolerance(cfg);
  const double kappa_max = cfg.evanescent_cut_factor / (2.0 * z_a);
  const double pref = -hbar / (4.0 * pi * pi * constants::epsilon0 * c * c);

  auto integrand = [&](double omega) {
    Sample<3> s;
    const double n13 = n_diff(omega, T.T1, T.T3);
    const double n23 = n_diff(omega, T.T2, T.T3);
    const double n21 = n_diff(omega, T.T2, T.T1);
    if (n13 == 0.0 && n23 == 0.0 && n21 == 0.0) return s;
    const cplx eps = eps_or_one(slab, omega);
    const cplx wa = omega * omega * alpha(omega);
    auto per_k = [&](double k, bool ew) {
      Vec<4> v{};
      for (Polarization p : kPolarizations) {
        const auto sc = slab_coefficients(slab, eps, p, omega, k);
        if (ew) {
          const cplx t3 = kernel_atom(omega, k, p, sc, z_a, T, AtomTerm::Evanescent) / k;
          v[0] += t3.real();
          v[1] += t3.imag();
        } else {
          const cplx t1 = kernel_atom(omega, k, p, sc, z_a, T, AtomTerm::PositionIndependent) / k;
          const cplx t2 = kernel_atom(omega, k, p, sc, z_a, T, AtomTerm::PropagativeInterference) / k;
          v[0] += t1.real();
          v[1] += t1.imag();
          v[2] += t2.real();
          v[3] += t2.imag();
        }
      }
      return v;
    };
    auto pw = propagative<4>(omega, [&](double k) { return per_k(k, false); }, tol);
    auto ew = evanescent<4>(omega, kappa_max, [&](double k) { return per_k(k, true); }, tol);
    const double aw = std::abs(wa);
    auto im = [&](double re, double imv) { return pref * std::imag(wa * cplx(re, imv)); };
    s.value = {im(pw.value[0], pw.value[1]), im(pw.value[2], pw.value[3]), im(ew.value[0], ew.value[1])};
    s.error = {std::abs(pref) * aw * (pw.error[0] + pw.error[1]), std::abs(pref) * aw * (pw.error[2] + pw.error[3]),
               std::abs(pref) * aw * (ew.error[0] + ew.error[1])};
    return s;
  };
  std::vector<double> extra;
  if (alpha.kind == Polarizability::Kind::Oscillator) extra.push_back(alpha.omega_a);
  const auto grid = omega_grid({T.T1, T.T2, T.T3}, {slab.material}, cfg, extra);
  const auto r = outer<3>(integrand, grid, reference_omega(grid), cfg);
  static const std::vector<std::string> names = {"position_independent", "propagative_interference",
                                                 "evanescent"};
  if (!r.converged) fail("atom force", r, names, reference_omega(grid));
  return assemble(names, r.value.data(), r.error.data(), 3);
}

// ---- body alone -------------------------------------------------------------------

ObservableResult observable_body_alone(const SlabSpec& slab, int m, double T1, double T3,
                                       const QuadratureConfig& cfg) {
  if (m != 1 && m != 2) throw DomainError("m must be 1 (heat) or 2 (force)");
  slab.validate();
  if (slab.infinite()) throw DomainError("an isolated body needs a finite thickness");
  ThermalTriple{T1, 0.0, T3}.validate();
  cfg.validate();
  const Tolerance tol = inner_tolerance(cfg);
  const double sign = m == 2 ? -1.0 : 1.0;

  auto integrand = [&](double omega) {
    Sample<1> s;
    if (n_diff(omega, T3, T1) == 0.0) return s;
    const cplx eps = eps_or_one(slab, omega);
    auto pw = propagative<1>(
        omega,
        [&](double k) {
          Vec<1> v{};
          const cplx kz = kz_vacuum(omega, k);
          const cplx half = std::exp(cplx(0.0, -1.0) * kz * slab.thickness);
          for (Polarization p : kPolarizations) {
            const auto sc = slab_coefficients(slab, eps, p, omega, k);
            const cplx rho = sc.rho * half;
            const DiagonalScattering mid{rho, rho, sc.tau, sc.tau, -0.5 * slab.thickness};
            v[0] += kernel_body_alone(m, omega, k, p, mid, T1, T3) / k;
          }
          return v;
        },
        tol);
    s.value[0] = sign * pw.value[0];
    s.error[0] = pw.error[0];
    return s;
  };
  const auto grid = omega_grid({T1, T3}, {slab.material}, cfg);
  const auto r = outer<1>(integrand, grid, reference_omega(grid), cfg);
  static const std::vector<std::string> names = {m == 1 ? "absorbed" : "force"};
  if (!r.converged) fail("body alone", r, names, reference_omega(grid));
  return assemble(names, r.value.data(), r.error.data(), 1);
}

}  // namespace casimir
