#pragma once

#include <complex>
#include <string>
#include <vector>

#include "casimir/integrate.hpp"
#include "casimir/kernels.hpp"
#include "casimir/scattering.hpp"

namespace casimir {

struct NamedTerm {
  std::string name;
  double value = 0.0;
  double error = 0.0;
};

struct ObservableResult {
  double value = 0.0;
  double error = 0.0;  // per-term errors added in quadrature
  std::vector<NamedTerm> terms;

  const NamedTerm& term(const std::string& name) const;
};

// Equilibrium pressure at temperature T (Matsubara route). Negative =
// attraction. T = 0 uses the continuous imaginary-frequency integral.
NamedTerm equilibrium_pressure(const SlabPairLayout& layout, double T, const QuadratureConfig& cfg);

// Total pressure on body 1, P = (P_eq(T1) + P_eq(T2)) / 2 + Delta P, in Pa.
// Negative = attraction (body 1 pulled towards body 2). Terms, all in the same
// sign convention: eq_T1, eq_T2 (each already halved), A_ew, B1, B2, B3,
// stefan_boltzmann. B3 excludes the constant that makes up stefan_boltzmann.
// Each nonequilibrium term is the printed pair difference, e.g. A(T1) - A(T2).
ObservableResult observable_pressure(const SlabPairLayout& layout, const ThermalTriple& T,
                                     const QuadratureConfig& cfg);

// Power absorbed by body 1 per unit area, W/m^2 (positive = body 1 absorbs).
// Terms A_ew, B1, B2, B3.
ObservableResult observable_heat(const SlabPairLayout& layout, const ThermalTriple& T, const QuadratureConfig& cfg);

// Nonequilibrium parts (Delta P in the reported sign, and h1) integrated from
// the unified diagonal kernel instead of the explicit kernels. Terms:
// propagative, evanescent. A nonzero frame_shift evaluates every amplitude in
// a frame translated by that distance (m); the result must not change.
ObservableResult observable_delta_general(int m, const SlabPairLayout& layout, const ThermalTriple& T,
                                          const QuadratureConfig& cfg, double frame_shift = 0.0);

// Atomic polarizability alpha(omega) in C m^2 / V.
struct Polarizability {
  enum class Kind { Static, Oscillator };
  Kind kind = Kind::Static;
  double alpha0 = 0.0;   // static value
  double omega_a = 0.0;  // transition frequency (oscillator), rad/s
  double gamma = 0.0;    // linewidth (oscillator), rad/s

  static Polarizability static_value(double alpha0);
  static Polarizability oscillator(double alpha0, double omega_a, double gamma);
  std::complex<double> operator()(double omega) const;
};

// Nonequilibrium force on an atom (temperature T2) at height z_a above a slab
// (temperature T1) in an environment at T3, newtons along +z (positive =
// away from the slab). Terms position_independent, propagative_interference,
// evanescent.
ObservableResult observable_atom_force(const SlabSpec& slab, const Polarizability& alpha, double z_a,
                                       const ThermalTriple& T, const QuadratureConfig& cfg);

// Isolated slab at T1 in radiation at T3. m = 1: absorbed power per area
// (W/m^2); m = 2: force per area (Pa). Evaluated in the slab's mid-plane
// frame, where a homogeneous slab is exactly side-symmetric.
ObservableResult observable_body_alone(const SlabSpec& slab, int m, double T1, double T3,
                                       const QuadratureConfig& cfg);

// Upper limit and breakpoints of the outer frequency integral.
struct OmegaGrid {
  double omega_max = 0.0;
  std::vector<double> breakpoints;
};
OmegaGrid omega_grid(const std::vector<double>& temperatures, const std::vector<DielectricModel>& materials,
                     const QuadratureConfig& cfg, const std::vector<double>& extra_resonances = {});

}  // namespace casimir
