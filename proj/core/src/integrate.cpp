#include "casimir/integrate.hpp"

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (!(abs_floor > 0.0)) throw DomainError("abs_floor must be positive");
  if (max_subdivisions <= 0) throw DomainError("max_subdivisions must be positive");
  if (!(omega_max_factor > 0.0)) throw DomainError("omega_max_factor must be positive");
  if (!(evanescent_cut_factor > 0.0)) throw DomainError("evanescent_cut_factor must be positive");
}

Tolerance tolerance_from(const QuadratureConfig& cfg) {
  return {cfg.rel_tol, cfg.abs_floor, cfg.max_subdivisions};
}

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg, std::span<const double> breakpoints,
                        double scale) {
  auto g = [&](double x) { return Vec<1>{f(x)}; };
  VecResult<1> r;
  if (std::isinf(b)) {
    if (!(scale > 0.0)) throw DomainError("semi-infinite integral needs a positive decay scale");
    r = integrate_adaptive_semi_infinite<1>(g, a, scale, tolerance_from(cfg));
  } else {
    r = integrate_adaptive<1>(g, a, b, breakpoints, tolerance_from(cfg));
  }
  if (!r.converged) {
    std::ostringstream os;
    os << "integration did not converge after " << r.subdivisions << " subdivisions; worst panel ["
       << r.worst_lo << ", " << r.worst_hi << "] error " << r.worst_error;
    throw ConvergenceError(os.str(), r.worst_lo, r.worst_hi, r.worst_error);
  }
  return {r.value[0], r.error[0], r.subdivisions};
}

SeriesResult matsubara_sum(double T, const std::function<TermEstimate(double)>& term,
                           const QuadratureConfig& cfg, double xi_scale) {
  using constants::hbar;
  using constants::k_B;
  using constants::pi;
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be finite and >= 0");
  SeriesResult out;
  if (T == 0.0) {
    auto g = [&](double xi) {
      TermEstimate t = term(xi);
      return Sample<1>{{t.value}, {t.error}};
    };
    auto r = integrate_adaptive_semi_infinite<1>(g, 0.0, xi_scale, tolerance_from(cfg));
    if (!r.converged)
      throw ConvergenceError("zero-temperature frequency integral did not converge", r.worst_lo,
                             r.worst_hi, r.worst_error);
    out.value = hbar / (2.0 * pi) * r.value[0];
    out.error = hbar / (2.0 * pi) * r.error[0];
    out.terms = r.subdivisions;
    return out;
  }
  const double kT = k_B * T;
  const double step = 2.0 * pi * kT / hbar;
  constexpr int kMaxTerms = 100000;
  double sum = 0.0, err = 0.0, prev = 0.0;
  for (int n = 0; n < kMaxTerms; ++n) {
    TermEstimate t = term(step * n);
    const double w = n == 0 ? 0.5 : 1.0;
    sum += w * kT * t.value;
    err += w * kT * t.error;
    const double cur = std::abs(t.value);
    if (n >= 2) {
      if (cur == 0.0 && prev == 0.0) {
        out.terms = n + 1;
        out.value = sum;
        out.error = err;
        return out;
      }
      const double r = prev > 0.0 ? cur / prev : 1.0;
      if (r < 1.0) {
        const double tail = kT * cur * r / (1.0 - r);
        if (tail <= std::max(cfg.rel_tol * std::abs(sum), cfg.abs_floor)) {
          out.terms = n + 1;
          out.value = sum;
          out.error = err + tail;
          return out;
        }
      }
    }
    prev = cur;
  }
  throw ConvergenceError("Matsubara series did not converge within 1e5 terms", 0.0,
                         step * kMaxTerms, std::abs(prev));
}

}  // namespace casimir
