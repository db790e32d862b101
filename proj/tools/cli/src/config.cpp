#include "casimir_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

namespace casimir::cli {

namespace {

double to_double(const std::string& s, const std::string& what) {
  const char* b = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(b, &end);
  if (end == b || *end != '\0' || !std::isfinite(v)) throw ConfigError(what + ": cannot parse '" + s + "'");
  return v;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Pressure: return "pressure";
    case Command::Heat: return "heat";
    case Command::AtomForce: return "atom-force";
    case Command::SlabAlone: return "slab-alone";
    case Command::Validate: return "validate";
    case Command::Materials: return "materials";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::Pressure, Command::Heat, Command::AtomForce, Command::SlabAlone, Command::Validate,
                    Command::Materials})
    if (to_string(c) == s) return c;
  throw ConfigError("unknown command '" + std::string(s) +
                    "' (expected pressure, heat, atom-force, slab-alone, validate or materials)");
}

std::vector<double> parse_grid_um(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("grid '" + text + "': expected start:stop:count[log]");
    const double a = to_double(parts[0], "grid start");
    const double b = to_double(parts[1], "grid stop");
    std::string n = parts[2];
    bool log = false;
    if (n.size() > 3 && n.compare(n.size() - 3, 3, "log") == 0) {
      log = true;
      n.resize(n.size() - 3);
    }
    char* end = nullptr;
    const long count = std::strtol(n.c_str(), &end, 10);
    if (end == n.c_str() || *end != '\0' || count < 1) throw ConfigError("grid '" + text + "': bad point count");
    if (count == 1) {
      out.push_back(a);
    } else {
      for (long i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        if (i == count - 1)
          out.push_back(b);
        else if (log)
          out.push_back(a * std::pow(b / a, t));
        else
          out.push_back(a + (b - a) * t);
      }
    }
  } else {
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ',')) out.push_back(to_double(p, "grid value"));
  }
  if (out.empty()) throw ConfigError("grid '" + text + "' is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] > 0.0)) throw ConfigError("grid '" + text + "': values must be positive");
    if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError("grid '" + text + "': values must be strictly increasing");
  }
  return out;
}

double parse_thickness_m(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinite") return std::numeric_limits<double>::infinity();
  const double v = to_double(text, "thickness");
  if (!(v > 0.0)) throw ConfigError("thickness must be positive or 'inf'");
  return v * 1e-6;
}

void RunConfig::validate() const {
  auto temp = [](double T, const char* n) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError(std::string(n) + " must be finite and >= 0 K");
  };
  temp(T1, "T1");
  temp(T2, "T2");
  temp(T3, "T3");
  try {
    quad.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  switch (command) {
    case Command::Pressure:
    case Command::Heat:
      parse_grid_um(d_um);
      parse_thickness_m(delta1);
      parse_thickness_m(delta2);
      if (mat1.empty() || mat2.empty()) throw ConfigError("both materials (mat1, mat2) are required");
      break;
    case Command::AtomForce:
      parse_grid_um(za_um);
      parse_thickness_m(delta1);
      if (mat1.empty()) throw ConfigError("slab material (mat1) is required");
      if (alpha_au.has_value() == alpha_si.has_value())
        throw ConfigError("atom-force needs exactly one of alpha_au or alpha_si");
      if (alpha_omega && !(*alpha_omega > 0.0)) throw ConfigError("alpha_omega must be positive");
      if (!(alpha_gamma >= 0.0)) throw ConfigError("alpha_gamma must be >= 0");
      break;
    case Command::SlabAlone:
      parse_thickness_m(delta1);
      if (std::isinf(parse_thickness_m(delta1))) throw ConfigError("slab-alone needs a finite thickness");
      if (mat1.empty()) throw ConfigError("slab material (mat1) is required");
      if (quantity != "heat" && quantity != "force") throw ConfigError("quantity must be heat or force");
      break;
    case Command::Validate:
    case Command::Materials:
      break;
  }
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = std::string(to_string(c.command));
  j["d_um"] = c.d_um;
  j["za_um"] = c.za_um;
  j["delta1"] = c.delta1;
  j["delta2"] = c.delta2;
  j["mat1"] = c.mat1;
  j["mat2"] = c.mat2;
  j["T1"] = c.T1;
  j["T2"] = c.T2;
  j["T3"] = c.T3;
  j["quantity"] = c.quantity;
  if (c.alpha_au) j["alpha_au"] = *c.alpha_au;
  if (c.alpha_si) j["alpha_si"] = *c.alpha_si;
  if (c.alpha_omega) j["alpha_omega"] = *c.alpha_omega;
  j["alpha_gamma"] = c.alpha_gamma;
  if (!c.material.empty()) j["material"] = c.material;
  j["rel_tol"] = c.quad.rel_tol;
  j["abs_floor"] = c.quad.abs_floor;
  j["max_subdivisions"] = c.quad.max_subdivisions;
  j["omega_max_factor"] = c.quad.omega_max_factor;
  j["evanescent_cut_factor"] = c.quad.evanescent_cut_factor;
  j["threads"] = c.threads;
  j["format"] = c.format;
  if (!c.data_dir.empty()) j["data_dir"] = c.data_dir;
  return j;
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
  for (const auto& [key, v] : j.items()) {
    auto str = [&]() {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return v.dump();
      throw ConfigError("config key '" + key + "' must be a string");
    };
    auto num = [&]() {
      if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
      return v.get<double>();
    };
    auto integer = [&]() {
      if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
      return v.get<int>();
    };
    if (key == "command") c.command = parse_command(str());
    else if (key == "d_um") c.d_um = str();
    else if (key == "za_um") c.za_um = str();
    else if (key == "delta1") c.delta1 = str();
    else if (key == "delta2") c.delta2 = str();
    else if (key == "mat1") c.mat1 = str();
    else if (key == "mat2") c.mat2 = str();
    else if (key == "T1") c.T1 = num();
    else if (key == "T2") c.T2 = num();
    else if (key == "T3") c.T3 = num();
    else if (key == "quantity") c.quantity = str();
    else if (key == "alpha_au") c.alpha_au = num();
    else if (key == "alpha_si") c.alpha_si = num();
    else if (key == "alpha_omega") c.alpha_omega = num();
    else if (key == "alpha_gamma") c.alpha_gamma = num();
    else if (key == "material") c.material = str();
    else if (key == "rel_tol") c.quad.rel_tol = num();
    else if (key == "abs_floor") c.quad.abs_floor = num();
    else if (key == "max_subdivisions") c.quad.max_subdivisions = integer();
    else if (key == "omega_max_factor") c.quad.omega_max_factor = num();
    else if (key == "evanescent_cut_factor") c.quad.evanescent_cut_factor = num();
    else if (key == "threads") c.threads = integer();
    else if (key == "format") c.format = str();
    else if (key == "out") c.out = str();
    else if (key == "data_dir") c.data_dir = str();
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

ParseOutcome parse_config(int argc, const char* const* argv) {
  ParseOutcome outcome;
  CLI::App app{"Casimir-Lifshitz pressure and radiative heat transfer out of thermal equilibrium",
               "casimir-neq"};
  app.set_version_flag("--version", "casimir-neq 0.3.0");

  std::string command, config_path;
  std::string d_um, za_um, delta1, delta2, mat1, mat2, quantity, material, format, out, data_dir;
  double T1 = 0, T2 = 0, T3 = 0, alpha_au = 0, alpha_si = 0, alpha_omega = 0, alpha_gamma = 0;
  double rel_tol = 0, abs_floor = 0, omax = 0, ecut = 0;
  int max_sub = 0, threads = 0;

  app.add_option("command", command, "pressure | heat | atom-force | slab-alone | validate | materials");
  app.add_option("--config", config_path, "flat JSON file with default values (flags override it)");
  auto* o_d = app.add_option("--d-um", d_um, "separation grid in um: start:stop:count[log] or list");
  auto* o_za = app.add_option("--za-um", za_um, "atom height grid in um (atom-force)");
  auto* o_d1 = app.add_option("--delta1", delta1, "thickness of body 1 in um, or inf");
  auto* o_d2 = app.add_option("--delta2", delta2, "thickness of body 2 in um, or inf");
  auto* o_m1 = app.add_option("--mat1", mat1, "material of body 1 (built-in name or file)");
  auto* o_m2 = app.add_option("--mat2", mat2, "material of body 2 (built-in name or file)");
  auto* o_T1 = app.add_option("--T1", T1, "temperature of body 1, K");
  auto* o_T2 = app.add_option("--T2", T2, "temperature of body 2 (or the atom), K");
  auto* o_T3 = app.add_option("--T3", T3, "environment temperature, K");
  auto* o_q = app.add_option("--quantity", quantity, "slab-alone: heat or force");
  auto* o_aau = app.add_option("--alpha-au", alpha_au, "static atomic polarizability, atomic units");
  auto* o_asi = app.add_option("--alpha-si", alpha_si, "static atomic polarizability, C m^2/V");
  auto* o_aw = app.add_option("--alpha-omega", alpha_omega, "single-oscillator resonance of alpha, rad/s");
  auto* o_ag = app.add_option("--alpha-gamma", alpha_gamma, "single-oscillator linewidth of alpha, rad/s");
  auto* o_mat = app.add_option("--material", material, "materials: model to tabulate");
  auto* o_rt = app.add_option("--rel-tol", rel_tol, "relative quadrature tolerance");
  auto* o_af = app.add_option("--abs-floor", abs_floor, "absolute error floor (output units)");
  auto* o_ms = app.add_option("--max-subdivisions", max_sub, "panel budget per integral");
  auto* o_om = app.add_option("--omega-max-factor", omax, "frequency cutoff in units of k_B T_max / hbar");
  auto* o_ec = app.add_option("--evanescent-cut-factor", ecut, "evanescent cutoff, Im kz <= factor/(2d)");
  auto* o_th = app.add_option("--threads", threads, "worker threads for sweeps");
  auto* o_fmt = app.add_option("--format", format, "csv or json");
  auto* o_out = app.add_option("--out", out, "output file (default stdout)");
  auto* o_dd = app.add_option("--data-dir", data_dir, "directory holding the built-in material files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    outcome.exit_now = true;
    outcome.exit_code = 0;
    outcome.message = e.what();
    std::ostringstream os;
    app.exit(e, os, os);
    outcome.message = os.str();
    return outcome;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig& c = outcome.config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + config_path + ": " + e.what());
    }
    apply_json(c, j);
  }
  if (!command.empty()) c.command = parse_command(command);
  else if (config_path.empty()) throw ConfigError("no command given");

  auto set = [](CLI::Option* o, auto& dst, const auto& v) {
    if (o->count() > 0) dst = v;
  };
  set(o_d, c.d_um, d_um);
  set(o_za, c.za_um, za_um);
  set(o_d1, c.delta1, delta1);
  set(o_d2, c.delta2, delta2);
  set(o_m1, c.mat1, mat1);
  set(o_m2, c.mat2, mat2);
  set(o_T1, c.T1, T1);
  set(o_T2, c.T2, T2);
  set(o_T3, c.T3, T3);
  set(o_q, c.quantity, quantity);
  if (o_aau->count()) {
    c.alpha_au = alpha_au;
    c.alpha_si.reset();
  }
  if (o_asi->count()) {
    c.alpha_si = alpha_si;
    c.alpha_au.reset();
  }
  if (o_aw->count()) c.alpha_omega = alpha_omega;
  set(o_ag, c.alpha_gamma, alpha_gamma);
  set(o_mat, c.material, material);
  set(o_rt, c.quad.rel_tol, rel_tol);
  set(o_af, c.quad.abs_floor, abs_floor);
  set(o_ms, c.quad.max_subdivisions, max_sub);
  set(o_om, c.quad.omega_max_factor, omax);
  set(o_ec, c.quad.evanescent_cut_factor, ecut);
  set(o_th, c.threads, threads);
  set(o_fmt, c.format, format);
  set(o_out, c.out, out);
  set(o_dd, c.data_dir, data_dir);
  if (o_aau->count() && o_asi->count()) throw ConfigError("give only one of --alpha-au and --alpha-si");
  c.validate();
  return outcome;
}

}  // namespace casimir::cli
