#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

struct Oscillator {
  double omega0 = 0.0;   // resonance, rad/s (0 for a free-carrier Drude term)
  double omega_p = 0.0;  // oscillator strength as a plasma frequency, rad/s
  double gamma = 0.0;    // damping, rad/s
};

struct OpticalSample {
  double omega = 0.0;  // rad/s
  double eps_re = 0.0;
  double eps_im = 0.0;
};

namespace model {
struct Vacuum {};
struct Constant {
  std::complex<double> eps;
};
struct DrudeLorentz {
  double eps_inf = 1.0;
  std::vector<Oscillator> oscillators;
};
// Ideal reflector: rho_TE = -1, rho_TM = +1, tau = 0 at every (omega, k).
struct PerfectMirror {};
// Ideal black body: rho = tau = 0 at every (omega, k).
struct PerfectAbsorber {};
struct Tabulated {
  std::vector<OpticalSample> samples;  // strictly increasing omega
  std::vector<double> log_omega;
};
}  // namespace model

// Immutable dielectric response. Cheap to copy (shared state).
class DielectricModel {
 public:
  using Variant = std::variant<model::Vacuum, model::Constant, model::DrudeLorentz,
                               model::PerfectMirror, model::PerfectAbsorber, model::Tabulated>;

  DielectricModel();  // vacuum

  static DielectricModel vacuum();
  static DielectricModel constant(std::complex<double> eps);
  // eps_inf >= 1, omega0 >= 0, omega_p > 0, gamma >= 0 (DomainError otherwise).
  static DielectricModel drude_lorentz(double eps_inf, std::vector<Oscillator> oscillators);
  static DielectricModel perfect_mirror();
  static DielectricModel perfect_absorber();
  // Sorts nothing: samples must already be strictly increasing in omega with
  // eps_im >= 0 (IngestionError otherwise). Use ingest_optical_data for raw input.
  static DielectricModel tabulated(std::vector<OpticalSample> samples);

  const Variant& data() const { return *data_; }
  const std::string& name() const { return name_; }
  DielectricModel named(std::string name) const;

  bool is_perfect_mirror() const;
  bool is_perfect_absorber() const;
  // Mirror and absorber carry closed-form coefficients instead of a permittivity.
  bool is_sentinel() const { return is_perfect_mirror() || is_perfect_absorber(); }
  // True when Im eps > 0 somewhere on the real axis.
  bool is_lossy() const;

 private:
  explicit DielectricModel(Variant v, std::string name);
  std::shared_ptr<const Variant> data_;
  std::string name_;
};

// eps(omega) on the real axis. omega <= 0 -> DomainError; sentinels -> UnsupportedModelError.
std::complex<double> permittivity(const DielectricModel& m, double omega);

// eps(i xi), real and >= 1 for passive models. Tabulated data goes through
// the Kramers-Kronig integral of eps_im; a table with eps_im == 0 everywhere
// gives exactly 1.
double permittivity_imag_axis(const DielectricModel& m, double xi);

// xi -> 0 limit of eps(i xi); +infinity for models with a free-carrier term.
double static_permittivity(const DielectricModel& m);

// Characteristic frequencies (rad/s) used to place quadrature breakpoints.
std::vector<double> resonance_frequencies(const DielectricModel& m);

// ---- optical data files -------------------------------------------------

enum class OpticalSchema { EnergyEvEps, WavelengthUmNk };

struct OpticalRow {
  int line = 0;  // 1-based line number in the source text
  double a = 0.0, b = 0.0, c = 0.0;
  long double a_exact = 0.0L;  // first column at extended precision
};

struct OpticalDataFile {
  OpticalSchema schema = OpticalSchema::EnergyEvEps;
  std::vector<OpticalRow> rows;
};

// Header must be exactly `energy_eV,eps_re,eps_im` or `wavelength_um,n,k`;
// `#` lines and blank lines are skipped.
OpticalDataFile parse_optical_csv(const std::string& text);
OpticalDataFile read_optical_csv(const std::filesystem::path& path);

// Canonical Tabulated model, sorted ascending in omega. Duplicate omega after
// conversion or eps_im < 0 -> IngestionError naming the rows.
DielectricModel ingest_optical_data(const OpticalDataFile& file);

// Writes a Tabulated model in the energy_eV schema such that
// ingest_optical_data(parse_optical_csv(emit_optical_csv(m))) is bit-identical.
std::string emit_optical_csv(const DielectricModel& m);

// Drude-Lorentz parameter file:
//   # free-form comment lines (citations)
//   eps_inf,<value>
//   omega0_rad_s,omega_p_rad_s,gamma_rad_s
//   <omega0>,<omega_p>,<gamma>
//   ...
DielectricModel parse_drude_lorentz(const std::string& text);
DielectricModel load_drude_lorentz_file(const std::filesystem::path& path);

// omega = E e / hbar and its inverse at extended precision.
long double ev_to_rad_s(long double energy_ev);
double wavelength_um_to_rad_s(long double wavelength_um);

}  // namespace casimir
