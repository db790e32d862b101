#include "casimir/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "casimir/errors.hpp"

namespace casimir {

std::vector<std::string> SweepResult::term_names() const {
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    std::vector<std::string> out;
    for (const auto& t : r.result.terms) out.push_back(t.name);
    return out;
  }
  return {};
}

SweepResult sweep(const std::function<ObservableResult(double)>& observable, const std::vector<double>& grid,
                  int width) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("sweep grid must be strictly increasing");
  SweepResult out;
  out.rows.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      SweepRow& row = out.rows[i];
      row.abscissa = grid[i];
      try {
        row.result = observable(grid[i]);
      } catch (const ConvergenceError& e) {
        row.status = e.what();
        row.convergence_failure = true;
        row.result = {};
      } catch (const Error& e) {
        row.status = e.what();
        row.result = {};
      }
    }
  };
  const int n = std::clamp(width, 1, static_cast<int>(std::max<std::size_t>(grid.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace casimir
