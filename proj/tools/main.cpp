#include <iostream>

#include "casimir_cli/config.hpp"
#include "casimir_cli/run.hpp"

int main(int argc, char** argv) {
  casimir::cli::ParseOutcome parsed;
  try {
    parsed = casimir::cli::parse_config(argc, argv);
  } catch (const casimir::cli::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return casimir::cli::kExitConfig;
  }
  if (parsed.exit_now) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return casimir::cli::run(parsed.config, std::cout, std::cerr);
}
