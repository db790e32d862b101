#include "casimir_cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/observables.hpp"
#include "casimir_cli/registry.hpp"
#include "casimir_cli/validation.hpp"

namespace casimir::cli {

namespace {

constexpr const char* kToolVersion = "0.3.0";

struct Columns {
  std::string abscissa = "abscissa_um";
  std::vector<std::string> terms;
  std::string units;
  std::string sign;
};

Columns columns_for(const RunConfig& c) {
  Columns col;
  switch (c.command) {
    case Command::Pressure:
      col.terms = {"eq_T1", "eq_T2", "A_ew", "B1", "B2", "B3", "stefan_boltzmann"};
      col.units = "abscissa_um = separation d in um; total, err and terms in Pa";
      col.sign = "pressure < 0 means attraction (body 1 pulled towards body 2)";
      break;
    case Command::Heat:
      col.terms = {"A_ew", "B1", "B2", "B3"};
      col.units = "abscissa_um = separation d in um; total, err and terms in W/m^2";
      col.sign = "heat > 0 means body 1 absorbs energy";
      break;
    case Command::AtomForce:
      col.terms = {"position_independent", "propagative_interference", "evanescent"};
      col.units = "abscissa_um = atom height z_A in um; total, err and terms in N";
      col.sign = "force > 0 points away from the slab";
      break;
    case Command::SlabAlone:
      col.terms = {c.quantity == "heat" ? "absorbed" : "force"};
      col.units = c.quantity == "heat" ? "abscissa_um = slab thickness in um; total, err in W/m^2"
                                       : "abscissa_um = slab thickness in um; total, err in Pa";
      col.sign = c.quantity == "heat" ? "heat > 0 means the slab absorbs energy"
                                      : "pressure < 0 means a push towards -z";
      break;
    default:
      break;
  }
  return col;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string csv_safe(std::string s) {
  for (auto& ch : s)
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  return s;
}

double term_value(const SweepRow& row, const std::string& name) {
  if (!row.ok()) return std::nan("");
  for (const auto& t : row.result.terms)
    if (t.name == name) return t.value;
  return std::nan("");
}

Polarizability make_alpha(const RunConfig& c) {
  const double a0 = c.alpha_au ? *c.alpha_au * constants::polarizability_au : *c.alpha_si;
  if (c.alpha_omega) return Polarizability::oscillator(a0, *c.alpha_omega, c.alpha_gamma);
  return Polarizability::static_value(a0);
}

int materials_command(const RunConfig& c, const MaterialRegistry& reg, std::ostream& out) {
  if (c.material.empty()) {
    out << "# built-in materials (data directory: "
        << (reg.data_dir().empty() ? std::string("not found") : reg.data_dir().string()) << ")\n";
    out << "name,description\n";
    for (const auto& m : reg.builtins()) out << m.name << "," << csv_safe(m.description) << "\n";
    return kExitOk;
  }
  const DielectricModel m = reg.resolve(c.material);
  out << "# material: " << m.name() << "\n";
  out << "# eps(omega) on the real axis and eps(i xi) on the imaginary axis, omega = xi in rad/s\n";
  out << "omega_rad_s,eps_re,eps_im,eps_imag_axis\n";
  for (int i = 0; i <= 25; ++i) {
    const double w = std::pow(10.0, 12.0 + 0.2 * i);
    out << num(w);
    if (m.is_sentinel()) {
      out << ",nan,nan,nan\n";
      continue;
    }
    const auto e = permittivity(m, w);
    out << "," << num(e.real()) << "," << num(e.imag()) << "," << num(permittivity_imag_axis(m, w)) << "\n";
  }
  return kExitOk;
}

int validate_command(const RunConfig& c, const MaterialRegistry& reg, std::ostream& out) {
  const auto checks = run_validation_suite(reg, c.quad);
  int failed = 0;
  for (const auto& ch : checks) {
    out << (ch.passed ? "PASS  " : "FAIL  ") << ch.name;
    if (!ch.detail.empty()) out << "  (" << ch.detail << ")";
    out << "\n";
    if (!ch.passed) ++failed;
  }
  out << (failed == 0 ? "all " + std::to_string(checks.size()) + " checks passed\n"
                      : std::to_string(failed) + " of " + std::to_string(checks.size()) + " checks failed\n");
  return failed == 0 ? kExitOk : kExitValidation;
}

}  // namespace

SweepResult run_sweep(const RunConfig& c) {
  const MaterialRegistry reg(c.data_dir);
  const ThermalTriple T{c.T1, c.T2, c.T3};
  const QuadratureConfig q = c.quad;
  std::function<ObservableResult(double)> f;
  std::vector<double> grid_um;
  switch (c.command) {
    case Command::Pressure:
    case Command::Heat: {
      const SlabSpec b1{reg.resolve(c.mat1), parse_thickness_m(c.delta1)};
      const SlabSpec b2{reg.resolve(c.mat2), parse_thickness_m(c.delta2)};
      grid_um = parse_grid_um(c.d_um);
      const bool pressure = c.command == Command::Pressure;
      f = [=](double d) {
        const SlabPairLayout L{b1, b2, d};
        return pressure ? observable_pressure(L, T, q) : observable_heat(L, T, q);
      };
      break;
    }
    case Command::AtomForce: {
      const SlabSpec s{reg.resolve(c.mat1), parse_thickness_m(c.delta1)};
      const Polarizability a = make_alpha(c);
      grid_um = parse_grid_um(c.za_um);
      f = [=](double z) { return observable_atom_force(s, a, z, T, q); };
      break;
    }
    case Command::SlabAlone: {
      const DielectricModel m = reg.resolve(c.mat1);
      const int which = c.quantity == "heat" ? 1 : 2;
      grid_um = {parse_thickness_m(c.delta1) * 1e6};
      f = [=](double delta) { return observable_body_alone({m, delta}, which, c.T1, c.T3, q); };
      break;
    }
    default:
      throw ConfigError("command has no sweep");
  }
  std::vector<double> grid_m;
  for (double x : grid_um) grid_m.push_back(x * 1e-6);
  return sweep(f, grid_m, c.threads);
}

std::string format_csv(const RunConfig& c, const SweepResult& r) {
  const Columns col = columns_for(c);
  std::ostringstream os;
  os << "# casimir-neq " << kToolVersion << " (constants " << constants::kConstantsVersion << ")\n";
  os << "# command: " << to_string(c.command) << "\n";
  os << "# units: " << col.units << "\n";
  os << "# sign: " << col.sign << "\n";
  os << "# err: per-term quadrature error estimates added in quadrature\n";
  os << "# config: " << config_to_json(c).dump() << "\n";
  os << col.abscissa << ",total,err";
  for (const auto& t : col.terms) os << "," << t;
  os << ",status\n";
  for (const auto& row : r.rows) {
    os << num(row.abscissa * 1e6) << "," << num(row.ok() ? row.result.value : std::nan("")) << ","
       << num(row.ok() ? row.result.error : std::nan(""));
    for (const auto& t : col.terms) os << "," << num(term_value(row, t));
    os << "," << csv_safe(row.status) << "\n";
  }
  return os.str();
}

std::string format_json(const RunConfig& c, const SweepResult& r) {
  const Columns col = columns_for(c);
  nlohmann::ordered_json j;
  j["metadata"] = {{"tool", "casimir-neq"},
                   {"tool_version", kToolVersion},
                   {"constants_version", std::string(constants::kConstantsVersion)},
                   {"command", std::string(to_string(c.command))},
                   {"units", col.units},
                   {"sign_convention", col.sign},
                   {"config", config_to_json(c)}};
  std::vector<std::string> columns = {col.abscissa, "total", "err"};
  columns.insert(columns.end(), col.terms.begin(), col.terms.end());
  columns.push_back("status");
  j["columns"] = columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["abscissa_um"] = row.abscissa * 1e6;
    if (row.ok()) {
      o["total"] = row.result.value;
      o["err"] = row.result.error;
      nlohmann::ordered_json terms;
      for (const auto& t : col.terms) terms[t] = term_value(row, t);
      o["terms"] = terms;
    } else {
      o["total"] = nullptr;
      o["err"] = nullptr;
      o["terms"] = nullptr;
    }
    o["status"] = row.status;
    rows.push_back(o);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    const MaterialRegistry reg(c.data_dir);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out.empty()) {
      file.open(c.out, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file " + c.out);
      sink = &file;
    }
    if (c.command == Command::Materials) return materials_command(c, reg, *sink);
    if (c.command == Command::Validate) return validate_command(c, reg, *sink);

    const SweepResult r = run_sweep(c);
    *sink << (c.format == "json" ? format_json(c, r) : format_csv(c, r));
    sink->flush();
    int code = kExitOk;
    for (const auto& row : r.rows) {
      if (row.ok()) continue;
      err << "row at " << row.abscissa * 1e6 << " um failed: " << row.status << "\n";
      code = row.convergence_failure ? kExitConvergence : std::max(code, static_cast<int>(kExitOther));
      if (row.convergence_failure) break;
    }
    return code;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IngestionError& e) {
    err << "ingestion error: " << e.what() << "\n";
    return kExitIngestion;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace casimir::cli
