#include "casimir_cli/validation.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "casimir/constants.hpp"
#include "casimir/observables.hpp"

namespace casimir::cli {

namespace {

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

CheckResult close_to(const std::string& name, double got, double want, double tol) {
  const double r = rel_diff(got, want);
  return {name, r <= tol, fmt("got %.10e, expected %.10e", got, want) + fmt(", rel %.2e, tol %.1e", r, tol)};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

double nonequilibrium_sum(const ObservableResult& r) {
  double s = 0.0;
  for (const auto& t : r.terms)
    if (t.name != "eq_T1" && t.name != "eq_T2") s += t.value;
  return s;
}

}  // namespace

std::vector<CheckResult> run_validation_suite(const MaterialRegistry& registry, const QuadratureConfig& cfg) {
  using namespace constants;
  std::vector<CheckResult> out;
  const double tol = std::max(20.0 * cfg.rel_tol, 1e-9);
  const double sigma = stefan_boltzmann;
  const SlabSpec mirror{DielectricModel::perfect_mirror(), 1e-6};
  const SlabSpec black{DielectricModel::perfect_absorber(), 1e-6};
  const SlabSpec vac{DielectricModel::vacuum(), 1e-6};

  out.push_back(guarded("mirror_pressure_zero_temperature", [&] {
    const double d = 1e-6;
    const NamedTerm eq = equilibrium_pressure({mirror, mirror, d}, 0.0, cfg);
    return close_to("mirror_pressure_zero_temperature", eq.value, -pi * pi * hbar * c / (240.0 * std::pow(d, 4)), tol);
  }));

  out.push_back(guarded("mirror_pressure_classical_limit", [&] {
    // n = 0 Matsubara term dominates when k_B T d / (hbar c) >> 1.
    const double d = 20e-6, T = 3000.0;
    const NamedTerm eq = equilibrium_pressure({mirror, mirror, d}, T, cfg);
    const double zeta3 = 1.2020569031595942;
    const double want = -k_B * T * zeta3 / (4.0 * pi * std::pow(d, 3));
    return close_to("mirror_pressure_classical_limit", eq.value, want, 1e-6);
  }));

  out.push_back(guarded("vacuum_bodies_null", [&] {
    const auto p = observable_pressure({vac, vac, 1e-6}, {0.0, 0.0, 300.0}, cfg);
    const auto h = observable_heat({vac, vac, 1e-6}, {100.0, 200.0, 300.0}, cfg);
    return CheckResult{"vacuum_bodies_null", std::abs(p.value) < 1e-18 && std::abs(h.value) < 1e-12,
                       fmt("pressure %.3e Pa, heat %.3e W/m^2", p.value, h.value)};
  }));

  out.push_back(guarded("radiation_pressure_constant", [&] {
    const double T = 300.0;
    const auto p = observable_pressure({vac, vac, 1e-6}, {0.0, 0.0, T}, cfg);
    return close_to("radiation_pressure_constant", p.term("stefan_boltzmann").value,
                    -2.0 * sigma * std::pow(T, 4) / (3.0 * c), tol);
  }));

  out.push_back(guarded("black_pair_heat", [&] {
    const double T = 300.0;
    const auto h = observable_heat({black, black, 1e-6}, {0.0, T, T}, cfg);
    return close_to("black_pair_heat", h.value, 2.0 * sigma * std::pow(T, 4), tol);
  }));

  out.push_back(guarded("black_slab_alone_heat", [&] {
    const double T = 300.0;
    const auto h = observable_body_alone(black, 1, 0.0, T, cfg);
    return close_to("black_slab_alone_heat", h.value, 2.0 * sigma * std::pow(T, 4), tol);
  }));

  const DielectricModel silica = registry.resolve("silica");
  const DielectricModel silicon = registry.resolve("silicon");
  const SlabPairLayout pair{{silica, 2e-6}, {silicon, 1000e-6}, 2e-6};

  out.push_back(guarded("equilibrium_null", [&] {
    const auto p = observable_pressure(pair, {300.0, 300.0, 300.0}, cfg);
    const auto h = observable_heat(pair, {300.0, 300.0, 300.0}, cfg);
    const double dp = nonequilibrium_sum(p);
    return CheckResult{"equilibrium_null", dp == 0.0 && h.value == 0.0,
                       fmt("delta pressure %.3e Pa, heat %.3e W/m^2", dp, h.value)};
  }));

  out.push_back(guarded("slab_alone_force_null", [&] {
    const auto f = observable_body_alone({silica, 2e-6}, 2, 300.0, 0.0, cfg);
    return CheckResult{"slab_alone_force_null", std::abs(f.value) < 1e-15, fmt("force %.3e Pa", f.value)};
  }));

  const ThermalTriple neq{300.0, 0.0, 400.0};
  out.push_back(guarded("unified_kernel_heat", [&] {
    const auto h = observable_heat(pair, neq, cfg);
    const auto g = observable_delta_general(1, pair, neq, cfg);
    return close_to("unified_kernel_heat", g.value, h.value, tol);
  }));

  out.push_back(guarded("unified_kernel_pressure", [&] {
    const auto p = observable_pressure(pair, neq, cfg);
    const auto g = observable_delta_general(2, pair, neq, cfg);
    return close_to("unified_kernel_pressure", g.value, nonequilibrium_sum(p), tol);
  }));

  out.push_back(guarded("atom_reciprocity", [&] {
    const double omega = 2e14;
    const std::complex<double> alpha(3e-40, 1e-42);
    double worst = 0.0;
    bool ok = true;
    const PlaneWave waves[] = {{2e5, 1e5, Polarization::TE}, {-3e5, 4e5, Polarization::TM},
                               {1e6, -2e5, Polarization::TM}, {0.0, 3e5, Polarization::TE}};
    for (const auto& a : waves)
      for (const auto& b : waves)
        for (int phi : {1, -1}) {
          const PlaneWave ma{-a.kx, -a.ky, a.p}, mb{-b.kx, -b.ky, b.p};
          const auto fr = atom_reflection_element(alpha, 1e-6, phi, a, b, omega);
          const auto br = atom_reflection_element(alpha, 1e-6, phi, mb, ma, omega);
          const auto ft = atom_transmission_element(alpha, 1e-6, phi, a, b, omega);
          const auto bt = atom_transmission_element(alpha, 1e-6, -phi, mb, ma, omega);
          for (const auto& r : {check_reciprocity(fr, br, a, b, omega), check_reciprocity(ft, bt, a, b, omega)}) {
            worst = std::max(worst, r.residual);
            ok = ok && r.passed;
          }
        }
    return CheckResult{"atom_reciprocity", ok, fmt("worst residual %.2e", worst)};
  }));

  out.push_back(guarded("frame_invariance", [&] {
    double worst = 0.0;
    for (double omega : {5e13, 2e14, 1e15})
      for (double kf : {0.3, 0.9, 1.5, 4.0})
        for (Polarization p : kPolarizations) {
          const double k = kf * omega / c;
          const auto fr = slab_pair_frame(pair, p, omega, k);
          const auto base = make_spectral_point(omega, k, p, fr.body1, fr.body2);
          const double shift = 0.37e-6;
          const auto moved = make_spectral_point(omega, k, p, translate_slab(fr.body1, shift, omega, k),
                                                 translate_slab(fr.body2, shift, omega, k));
          worst = std::max(worst, std::abs(moved.D - base.D) / std::abs(base.D));
          for (int m : {1, 2})
            worst = std::max(worst, rel_diff(kernel_delta_general_diagonal(m, moved, neq),
                                             kernel_delta_general_diagonal(m, base, neq)));
        }
    return CheckResult{"frame_invariance", worst < 1e-12, fmt("worst relative change %.2e", worst)};
  }));

  out.push_back(guarded("passivity", [&] {
    double worst = -1.0;
    double lossless = 0.0;
    for (const auto& slab : {SlabSpec{silica, 2e-6}, SlabSpec{silicon, 1000e-6}})
      for (double omega : {1e13, 1.9e14, 1e15, 2e16})
        for (double kf : {0.0, 0.5, 0.99})
          for (Polarization p : kPolarizations) {
            const auto s = slab_coefficients(slab, p, omega, kf * omega / c);
            worst = std::max(worst, std::norm(s.rho) + std::norm(s.tau) - 1.0);
          }
    const SlabSpec glass{DielectricModel::constant({2.25, 0.0}), 3e-6};
    for (double kf : {0.0, 0.4, 0.8})
      for (Polarization p : kPolarizations) {
        const auto s = slab_coefficients(glass, p, 3e14, kf * 3e14 / c);
        lossless = std::max(lossless, std::abs(std::norm(s.rho) + std::norm(s.tau) - 1.0));
      }
    return CheckResult{"passivity", worst <= 1e-12 && lossless < 1e-12,
                       fmt("max |rho|^2+|tau|^2-1 lossy %.2e, lossless deviation %.2e", worst, lossless)};
  }));

  return out;
}

}  // namespace casimir::cli
