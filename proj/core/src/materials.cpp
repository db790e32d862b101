#include "casimir/materials.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/integrate.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const long double kEvToRadS =
    static_cast<long double>(constants::e_charge) / static_cast<long double>(constants::hbar);

std::complex<double> tabulated_eps(const model::Tabulated& t, double omega) {
  const auto& s = t.samples;
  if (omega < s.front().omega) return {s.front().eps_re, 0.0};
  if (omega > s.back().omega) return {1.0, 0.0};
  auto it = std::lower_bound(s.begin(), s.end(), omega,
                             [](const OpticalSample& a, double w) { return a.omega < w; });
  const auto i = static_cast<std::size_t>(it - s.begin());
  if (it->omega == omega) return {it->eps_re, it->eps_im};
  const double u = (std::log(omega) - t.log_omega[i - 1]) / (t.log_omega[i] - t.log_omega[i - 1]);
  const auto& lo = s[i - 1];
  const auto& hi = s[i];
  return {lo.eps_re + u * (hi.eps_re - lo.eps_re), lo.eps_im + u * (hi.eps_im - lo.eps_im)};
}

// 1 + (2/pi) int omega eps_im / (omega^2 + xi^2) d omega, taken in u = ln omega
// with every table node as a breakpoint (the integrand has kinks there) and a
// split at omega = xi.
double kramers_kronig(const model::Tabulated& t, double xi) {
  const auto& s = t.samples;
  if (std::all_of(s.begin(), s.end(), [](const OpticalSample& x) { return x.eps_im == 0.0; })) return 1.0;
  std::vector<double> bp = t.log_omega;
  if (xi > 0.0) bp.push_back(std::log(xi));
  auto f = [&](double u) {
    const double w = std::exp(u);
    const double im = tabulated_eps(t, w).imag();
    return Vec<1>{w * w * im / (w * w + xi * xi)};
  };
  Tolerance tol{1e-8, 1e-300, 200000};
  auto r = integrate_adaptive<1>(f, t.log_omega.front(), t.log_omega.back(), bp, tol);
  if (!r.converged)
    throw ConvergenceError("Kramers-Kronig integral did not converge", std::exp(r.worst_lo),
                           std::exp(r.worst_hi), r.worst_error);
  return 1.0 + 2.0 / constants::pi * r.value[0];
}

[[noreturn]] void sentinel_error(const char* what) {
  throw UnsupportedModelError(std::string(what) +
                              ": ideal mirror and absorber have closed-form coefficients, not a permittivity");
}

double parse_number(const std::string& field, int line, bool extended, long double* ext = nullptr) {
  const char* b = field.c_str();
  while (*b == ' ' || *b == '\t') ++b;
  char* end = nullptr;
  errno = 0;
  long double v = extended ? std::strtold(b, &end) : static_cast<long double>(std::strtod(b, &end));
  while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
  if (end == b || *end != '\0' || errno == ERANGE || !std::isfinite(static_cast<double>(v)))
    throw IngestionError("line " + std::to_string(line) + ": cannot parse number '" + field + "'");
  if (ext) *ext = v;
  return extended ? static_cast<double>(v) : std::strtod(b, nullptr);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  auto issp = [](unsigned char ch) { return std::isspace(ch) != 0; };
  while (!s.empty() && issp(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && issp(s[i])) ++i;
  return s.substr(i);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

DielectricModel::DielectricModel() : DielectricModel(model::Vacuum{}, "vacuum") {}

DielectricModel::DielectricModel(Variant v, std::string name)
    : data_(std::make_shared<const Variant>(std::move(v))), name_(std::move(name)) {}

DielectricModel DielectricModel::vacuum() { return DielectricModel(); }

DielectricModel DielectricModel::constant(std::complex<double> eps) {
  if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
    throw DomainError("constant permittivity must be finite");
  if (eps.imag() < 0.0) throw DomainError("constant permittivity violates passivity (Im eps < 0)");
  return DielectricModel(model::Constant{eps}, "constant");
}

DielectricModel DielectricModel::drude_lorentz(double eps_inf, std::vector<Oscillator> oscillators) {
  if (!(eps_inf >= 1.0) || !std::isfinite(eps_inf)) throw DomainError("eps_inf must be finite and >= 1");
  for (const auto& o : oscillators) {
    if (!(o.omega0 >= 0.0) || !(o.omega_p > 0.0) || !(o.gamma >= 0.0) || !std::isfinite(o.omega0) ||
        !std::isfinite(o.omega_p) || !std::isfinite(o.gamma))
      throw DomainError("oscillator needs omega0 >= 0, omega_p > 0, gamma >= 0");
  }
  return DielectricModel(model::DrudeLorentz{eps_inf, std::move(oscillators)}, "drude-lorentz");
}

DielectricModel DielectricModel::perfect_mirror() { return DielectricModel(model::PerfectMirror{}, "mirror"); }

DielectricModel DielectricModel::perfect_absorber() {
  return DielectricModel(model::PerfectAbsorber{}, "absorber");
}

DielectricModel DielectricModel::tabulated(std::vector<OpticalSample> samples) {
  if (samples.empty()) throw IngestionError("tabulated model needs at least one sample");
  model::Tabulated t;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.omega > 0.0) || !std::isfinite(s.omega) || !std::isfinite(s.eps_re) || !std::isfinite(s.eps_im))
      throw IngestionError("sample " + std::to_string(i) + ": omega must be positive and values finite");
    if (s.eps_im < 0.0) throw IngestionError("sample " + std::to_string(i) + ": negative eps_im (not passive)");
    if (i > 0 && !(s.omega > samples[i - 1].omega))
      throw IngestionError("sample " + std::to_string(i) + ": omega not strictly increasing");
    t.log_omega.push_back(std::log(s.omega));
  }
  t.samples = std::move(samples);
  return DielectricModel(std::move(t), "tabulated");
}

DielectricModel DielectricModel::named(std::string name) const {
  DielectricModel m = *this;
  m.name_ = std::move(name);
  return m;
}

bool DielectricModel::is_perfect_mirror() const { return std::holds_alternative<model::PerfectMirror>(*data_); }

bool DielectricModel::is_perfect_absorber() const {
  return std::holds_alternative<model::PerfectAbsorber>(*data_);
}

bool DielectricModel::is_lossy() const {
  return std::visit(overloaded{
                        [](const model::Vacuum&) { return false; },
                        [](const model::Constant& c) { return c.eps.imag() > 0.0; },
                        [](const model::DrudeLorentz& d) {
                          return std::any_of(d.oscillators.begin(), d.oscillators.end(),
                                             [](const Oscillator& o) { return o.gamma > 0.0; });
                        },
                        [](const model::PerfectMirror&) { return false; },
                        [](const model::PerfectAbsorber&) { return true; },
                        [](const model::Tabulated& t) {
                          return std::any_of(t.samples.begin(), t.samples.end(),
                                             [](const OpticalSample& s) { return s.eps_im > 0.0; });
                        },
                    },
                    *data_);
}

std::complex<double> permittivity(const DielectricModel& m, double omega) {
  if (!(omega > 0.0)) throw DomainError("permittivity requires omega > 0");
  return std::visit(overloaded{
                        [](const model::Vacuum&) { return std::complex<double>(1.0, 0.0); },
                        [](const model::Constant& c) { return c.eps; },
                        [omega](const model::DrudeLorentz& d) {
                          std::complex<double> eps(d.eps_inf, 0.0);
                          for (const auto& o : d.oscillators)
                            eps += o.omega_p * o.omega_p /
                                   std::complex<double>(o.omega0 * o.omega0 - omega * omega, -o.gamma * omega);
                          return eps;
                        },
                        [](const model::PerfectMirror&) -> std::complex<double> { sentinel_error("permittivity"); },
                        [](const model::PerfectAbsorber&) -> std::complex<double> {
                          sentinel_error("permittivity");
                        },
                        [omega](const model::Tabulated& t) { return tabulated_eps(t, omega); },
                    },
                    m.data());
}

double permittivity_imag_axis(const DielectricModel& m, double xi) {
  if (!(xi > 0.0)) throw DomainError("permittivity_imag_axis requires xi > 0");
  return std::visit(overloaded{
                        [](const model::Vacuum&) { return 1.0; },
                        [](const model::Constant& c) -> double {
                          if (c.eps.imag() != 0.0)
                            throw UnsupportedModelError(
                                "a constant complex permittivity has no causal continuation to imaginary frequency");
                          return c.eps.real();
                        },
                        [xi](const model::DrudeLorentz& d) {
                          double eps = d.eps_inf;
                          for (const auto& o : d.oscillators)
                            eps += o.omega_p * o.omega_p / (o.omega0 * o.omega0 + xi * xi + o.gamma * xi);
                          return eps;
                        },
                        [](const model::PerfectMirror&) -> double { sentinel_error("permittivity_imag_axis"); },
                        [](const model::PerfectAbsorber&) -> double { sentinel_error("permittivity_imag_axis"); },
                        [xi](const model::Tabulated& t) { return kramers_kronig(t, xi); },
                    },
                    m.data());
}

double static_permittivity(const DielectricModel& m) {
  return std::visit(overloaded{
                        [](const model::Vacuum&) { return 1.0; },
                        [](const model::Constant& c) -> double {
                          if (c.eps.imag() != 0.0)
                            throw UnsupportedModelError(
                                "a constant complex permittivity has no causal continuation to imaginary frequency");
                          return c.eps.real();
                        },
                        [](const model::DrudeLorentz& d) {
                          double eps = d.eps_inf;
                          for (const auto& o : d.oscillators) {
                            if (o.omega0 == 0.0) return std::numeric_limits<double>::infinity();
                            eps += o.omega_p * o.omega_p / (o.omega0 * o.omega0);
                          }
                          return eps;
                        },
                        [](const model::PerfectMirror&) -> double { sentinel_error("static_permittivity"); },
                        [](const model::PerfectAbsorber&) -> double { sentinel_error("static_permittivity"); },
                        [](const model::Tabulated& t) { return kramers_kronig(t, 0.0); },
                    },
                    m.data());
}

std::vector<double> resonance_frequencies(const DielectricModel& m) {
  std::vector<double> out;
  std::visit(overloaded{
                 [&](const model::DrudeLorentz& d) {
                   for (const auto& o : d.oscillators) {
                     if (o.omega0 > 0.0)
                       out.push_back(o.omega0);
                     else
                       out.push_back(o.omega_p / std::sqrt(d.eps_inf));
                   }
                 },
                 [&](const model::Tabulated& t) {
                   auto it = std::max_element(t.samples.begin(), t.samples.end(),
                                              [](const auto& a, const auto& b) { return a.eps_im < b.eps_im; });
                   if (it->eps_im > 0.0) out.push_back(it->omega);
                 },
                 [](const auto&) {},
             },
             m.data());
  std::sort(out.begin(), out.end());
  return out;
}

// ---- optical data files -------------------------------------------------

long double ev_to_rad_s(long double energy_ev) { return energy_ev * kEvToRadS; }

double wavelength_um_to_rad_s(long double wavelength_um) {
  return static_cast<double>(2.0L * std::numbers::pi_v<long double> *
                             static_cast<long double>(constants::c) / (wavelength_um * 1e-6L));
}

OpticalDataFile parse_optical_csv(const std::string& text) {
  OpticalDataFile file;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line_no == 1 && line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line = line.substr(3);
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      std::string h;
      for (char ch : line)
        if (ch != ' ' && ch != '\t') h.push_back(ch);
      if (h == "energy_eV,eps_re,eps_im")
        file.schema = OpticalSchema::EnergyEvEps;
      else if (h == "wavelength_um,n,k")
        file.schema = OpticalSchema::WavelengthUmNk;
      else
        throw IngestionError("line " + std::to_string(line_no) +
                             ": header must be 'energy_eV,eps_re,eps_im' or 'wavelength_um,n,k'");
      have_header = true;
      continue;
    }
    auto f = split_csv(line);
    if (f.size() != 3)
      throw IngestionError("line " + std::to_string(line_no) + ": expected 3 columns, found " +
                           std::to_string(f.size()));
    OpticalRow row;
    row.line = line_no;
    row.a = parse_number(f[0], line_no, true, &row.a_exact);
    row.b = parse_number(f[1], line_no, false);
    row.c = parse_number(f[2], line_no, false);
    file.rows.push_back(row);
  }
  if (!have_header) throw IngestionError("optical data file has no header line");
  if (file.rows.empty()) throw IngestionError("optical data file has no data rows");
  return file;
}

OpticalDataFile read_optical_csv(const std::filesystem::path& path) { return parse_optical_csv(slurp(path)); }

DielectricModel ingest_optical_data(const OpticalDataFile& file) {
  struct Tagged {
    OpticalSample s;
    int line;
  };
  std::vector<Tagged> rows;
  rows.reserve(file.rows.size());
  for (const auto& r : file.rows) {
    Tagged t{{}, r.line};
    if (!(r.a_exact > 0.0L))
      throw IngestionError("line " + std::to_string(r.line) + ": energy/wavelength must be positive");
    if (file.schema == OpticalSchema::EnergyEvEps) {
      t.s.omega = static_cast<double>(ev_to_rad_s(r.a_exact));
      t.s.eps_re = r.b;
      t.s.eps_im = r.c;
    } else {
      t.s.omega = wavelength_um_to_rad_s(r.a_exact);
      const std::complex<double> n(r.b, r.c);
      const std::complex<double> eps = n * n;
      t.s.eps_re = eps.real();
      t.s.eps_im = eps.imag();
    }
    if (t.s.eps_im < 0.0)
      throw IngestionError("line " + std::to_string(r.line) + ": negative eps_im violates passivity");
    if (!(t.s.omega > 0.0) || !std::isfinite(t.s.omega))
      throw IngestionError("line " + std::to_string(r.line) + ": converted frequency is not positive and finite");
    rows.push_back(t);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Tagged& x, const Tagged& y) { return x.s.omega < y.s.omega; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].s.omega == rows[i - 1].s.omega)
      throw IngestionError("duplicate frequency at lines " + std::to_string(rows[i - 1].line) + " and " +
                           std::to_string(rows[i].line));
  }
  std::vector<OpticalSample> samples;
  samples.reserve(rows.size());
  for (const auto& r : rows) samples.push_back(r.s);
  return DielectricModel::tabulated(std::move(samples));
}

std::string emit_optical_csv(const DielectricModel& m) {
  const auto* t = std::get_if<model::Tabulated>(&m.data());
  if (!t) throw UnsupportedModelError("only tabulated models can be written as optical data");
  std::string out = "# " + m.name() + "\nenergy_eV,eps_re,eps_im\n";
  char buf[160];
  for (const auto& s : t->samples) {
    // Find an extended-precision energy whose conversion lands exactly on
    // omega; the extended grid is fine enough that one always exists nearby.
    long double e = static_cast<long double>(s.omega) / kEvToRadS;
    for (int step = 0; step < 64; ++step) {
      const double w = static_cast<double>(ev_to_rad_s(e));
      if (w == s.omega) break;
      e = std::nextafter(e, w < s.omega ? std::numeric_limits<long double>::infinity() : 0.0L);
    }
    // Print with enough digits to round-trip the extended value.
    std::snprintf(buf, sizeof buf, "%.*Lg,%.17g,%.17g\n", std::numeric_limits<long double>::max_digits10, e,
                  s.eps_re, s.eps_im);
    out += buf;
  }
  return out;
}

DielectricModel parse_drude_lorentz(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_eps = false, have_header = false;
  double eps_inf = 1.0;
  std::vector<Oscillator> osc;
  std::string name;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (name.empty() && body.rfind("name:", 0) == 0) name = trim(body.substr(5));
      continue;
    }
    auto f = split_csv(line);
    for (auto& x : f) x = trim(x);
    if (!have_eps) {
      if (f.size() != 2 || f[0] != "eps_inf")
        throw IngestionError("line " + std::to_string(line_no) + ": expected 'eps_inf,<value>'");
      eps_inf = parse_number(f[1], line_no, false);
      have_eps = true;
    } else if (!have_header) {
      if (f.size() != 3 || f[0] != "omega0_rad_s" || f[1] != "omega_p_rad_s" || f[2] != "gamma_rad_s")
        throw IngestionError("line " + std::to_string(line_no) +
                             ": expected header 'omega0_rad_s,omega_p_rad_s,gamma_rad_s'");
      have_header = true;
    } else {
      if (f.size() != 3)
        throw IngestionError("line " + std::to_string(line_no) + ": expected 3 oscillator columns");
      osc.push_back({parse_number(f[0], line_no, false), parse_number(f[1], line_no, false),
                     parse_number(f[2], line_no, false)});
    }
  }
  if (!have_eps) throw IngestionError("Drude-Lorentz file has no eps_inf line");
  try {
    auto m = DielectricModel::drude_lorentz(eps_inf, std::move(osc));
    return name.empty() ? m : m.named(name);
  } catch (const DomainError& e) {
    throw IngestionError(std::string("invalid Drude-Lorentz parameters: ") + e.what());
  }
}

DielectricModel load_drude_lorentz_file(const std::filesystem::path& path) {
  auto m = parse_drude_lorentz(slurp(path));
  return m.name() == "drude-lorentz" ? m.named(path.stem().string()) : m;
}

}  // namespace casimir
