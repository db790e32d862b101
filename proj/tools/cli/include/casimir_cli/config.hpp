#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "casimir/errors.hpp"
#include "casimir/integrate.hpp"

namespace casimir::cli {

// Bad flags, bad config files, impossible geometry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { Pressure, Heat, AtomForce, SlabAlone, Validate, Materials };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

struct RunConfig {
  Command command = Command::Pressure;
  std::string d_um = "1:10:30log";  // separation grid (pressure, heat)
  std::string za_um = "1:10:10log";  // atom height grid (atom-force)
  std::string delta1 = "2";          // um or "inf"
  std::string delta2 = "1000";
  std::string mat1 = "silica";
  std::string mat2 = "silicon";
  double T1 = 300.0;
  double T2 = 0.0;
  double T3 = 0.0;
  std::string quantity = "heat";  // slab-alone: heat | force
  std::optional<double> alpha_au;      // static polarizability, atomic units
  std::optional<double> alpha_si;      // static polarizability, C m^2 / V
  std::optional<double> alpha_omega;   // oscillator resonance, rad/s
  double alpha_gamma = 0.0;            // oscillator linewidth, rad/s
  std::string material;                // materials command: model to echo
  QuadratureConfig quad;
  int threads = 1;
  std::string format = "csv";  // csv | json
  std::string out;             // empty = stdout
  std::string data_dir;        // empty = default search

  // ConfigError on any inconsistency.
  void validate() const;
};

// "a:b:n" (linear), "a:b:nlog" (logarithmic), "x" or "x,y,z". Values in um,
// returned in um, strictly increasing and positive.
std::vector<double> parse_grid_um(const std::string& text);

// Thickness in um or "inf"; returns metres (+inf for "inf").
double parse_thickness_m(const std::string& text);

// Resolved configuration as a flat JSON object (the output sink is omitted).
// Feeding it back through --config reproduces the run.
nlohmann::json config_to_json(const RunConfig& c);

// Applies a flat JSON object; unknown keys and wrongly typed values raise ConfigError.
void apply_json(RunConfig& c, const nlohmann::json& j);

struct ParseOutcome {
  RunConfig config;
  bool exit_now = false;  // --help / --version handled
  int exit_code = 0;
  std::string message;
};

// Parses command-line arguments. A --config file is applied first and
// explicit flags override its values.
ParseOutcome parse_config(int argc, const char* const* argv);

}  // namespace casimir::cli
