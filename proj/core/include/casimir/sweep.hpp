#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casimir/observables.hpp"

namespace casimir {

struct SweepRow {
  double abscissa = 0.0;  // m
  ObservableResult result;
  std::string status = "ok";  // "ok" or the error message of a failed row
  bool convergence_failure = false;
  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Term names in column order (taken from the first successful row).
  std::vector<std::string> term_names() const;
};

// Evaluates `observable` at every abscissa (strictly increasing, DomainError
// otherwise) using up to `width` worker threads. Each row is computed by a
// single thread in a fixed order, so the output does not depend on `width`.
// A row that throws casimir::Error is recorded with its message and the
// sweep continues.
SweepResult sweep(const std::function<ObservableResult(double)>& observable, const std::vector<double>& grid,
                  int width);

}  // namespace casimir
