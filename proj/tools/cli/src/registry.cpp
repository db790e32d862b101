#include "casimir_cli/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "casimir_cli/config.hpp"

#ifndef CASIMIR_SOURCE_DATA_DIR
#define CASIMIR_SOURCE_DATA_DIR ""
#endif
#ifndef CASIMIR_INSTALL_DATA_DIR
#define CASIMIR_INSTALL_DATA_DIR ""
#endif

namespace casimir::cli {

namespace fs = std::filesystem;

namespace {

std::string first_comment(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) != 0) break;
    if (line.find("name:") != std::string::npos) continue;
    auto s = line.substr(1);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    if (!s.empty()) return s;
  }
  return "";
}

// Distinguishes optical tables from Drude-Lorentz parameter files by the
// first non-comment line.
bool is_optical_table(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    return line.rfind("energy_eV", 0) == 0 || line.rfind("wavelength_um", 0) == 0;
  }
  return false;
}

}  // namespace

MaterialRegistry::MaterialRegistry(const std::string& data_dir) {
  std::vector<fs::path> candidates;
  if (!data_dir.empty()) {
    if (!fs::is_directory(data_dir)) throw ConfigError("data directory " + data_dir + " does not exist");
    dir_ = data_dir;
    return;
  }
  if (const char* env = std::getenv("CASIMIR_DATA_DIR"); env && *env) candidates.emplace_back(env);
  candidates.emplace_back(CASIMIR_SOURCE_DATA_DIR);
  candidates.emplace_back(CASIMIR_INSTALL_DATA_DIR);
  for (const auto& c : candidates) {
    if (!c.empty() && fs::is_directory(c)) {
      dir_ = c;
      return;
    }
  }
}

std::vector<BuiltinMaterial> MaterialRegistry::builtins() const {
  std::vector<BuiltinMaterial> out = {
      {"vacuum", "eps = 1"},
      {"mirror", "ideal reflector, rho_TE = -1, rho_TM = +1, tau = 0"},
      {"absorber", "ideal black body, rho = tau = 0"},
  };
  if (!dir_.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir_))
      if (e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back({f.stem().string(), first_comment(f)});
  }
  return out;
}

DielectricModel MaterialRegistry::resolve(const std::string& spec) const {
  if (spec == "vacuum") return DielectricModel::vacuum();
  if (spec == "mirror") return DielectricModel::perfect_mirror();
  if (spec == "absorber") return DielectricModel::perfect_absorber();
  fs::path p = spec;
  if (!fs::exists(p) && !dir_.empty() && !spec.empty() && spec.find('/') == std::string::npos)
    p = dir_ / (spec + ".csv");
  if (!fs::exists(p))
    throw ConfigError("unknown material '" + spec + "' (not a built-in name or an existing file)");
  if (is_optical_table(p)) return ingest_optical_data(read_optical_csv(p)).named(p.stem().string());
  return load_drude_lorentz_file(p);
}

}  // namespace casimir::cli
