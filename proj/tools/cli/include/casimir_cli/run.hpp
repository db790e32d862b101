#pragma once

#include <iosfwd>
#include <string>

#include "casimir/sweep.hpp"
#include "casimir_cli/config.hpp"

namespace casimir::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitConfig = 2,
  kExitIngestion = 3,
  kExitConvergence = 4,
  kExitValidation = 5,
};

// Executes a parsed configuration, writing the table to c.out (or `out` when
// c.out is empty) and diagnostics to `err`.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

// Table rendering used by run().
std::string format_csv(const RunConfig& c, const SweepResult& r);
std::string format_json(const RunConfig& c, const SweepResult& r);

// Sweep for the observable commands (pressure, heat, atom-force, slab-alone).
SweepResult run_sweep(const RunConfig& c);

}  // namespace casimir::cli
