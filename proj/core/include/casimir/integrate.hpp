#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_floor = 1e-30;  // in the output units of the observable
  int max_subdivisions = 2000;
  double omega_max_factor = 40.0;       // hbar omega_max = factor k_B T_max
  double evanescent_cut_factor = 40.0;  // Im kz in (0, factor / (2 d)]

  // DomainError unless every field is positive and rel_tol < 1.
  void validate() const;
};

template <std::size_t N>
using Vec = std::array<double, N>;

// Integrand value carrying its own error (for nested integrals).
template <std::size_t N>
struct Sample {
  Vec<N> value{};
  Vec<N> error{};
};

template <std::size_t N>
struct VecResult {
  Vec<N> value{};
  Vec<N> error{};
  int subdivisions = 0;
  bool converged = false;
  double worst_lo = 0.0;
  double worst_hi = 0.0;
  double worst_error = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

// Stopping rule shared by the adaptive engine: the summed component error
// must fall below max(rel_tol * sum_i |I_i|, abs_tol, 100 eps * sum_i int |f_i|).
struct Tolerance {
  double rel = 1e-6;
  double abs = 0.0;
  int max_subdivisions = 2000;
};

namespace detail {

// 21-point Kronrod abscissae (positive half) and weights, with the embedded
// 10-point Gauss weights.
inline constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Panel {
  double lo, hi;
  Vec<N> value, error;
  double err_sum;  // own discretisation error, inner-integral errors excluded
  double abs_sum;  // integral of |f| summed over components
  bool operator<(const Panel& o) const {
    // Ties broken by position so the refinement order is reproducible.
    if (err_sum != o.err_sum) return err_sum < o.err_sum;
    return lo > o.lo;
  }
};

template <std::size_t N, class F>
Sample<N> call_sample(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (std::is_same_v<R, Sample<N>>) {
    return f(x);
  } else {
    Sample<N> s;
    s.value = f(x);
    return s;
  }
}

template <std::size_t N, class F>
Panel<N> gk21(F& f, double lo, double hi) {
  const double centr = 0.5 * (lo + hi);
  const double hlgth = 0.5 * (hi - lo);
  const double dhlgth = std::abs(hlgth);
  Vec<N> resg{}, resk{}, resabs{}, inner{};
  Vec<N> fv[21];
  Sample<N> fc = call_sample<N>(f, centr);
  fv[10] = fc.value;
  for (std::size_t i = 0; i < N; ++i) {
    resk[i] = fc.value[i] * wgk[10];
    resabs[i] = std::abs(resk[i]);
    inner[i] = fc.error[i] * wgk[10];
  }
  for (int j = 0; j < 10; ++j) {
    const double dx = hlgth * xgk[j];
    Sample<N> s1 = call_sample<N>(f, centr - dx);
    Sample<N> s2 = call_sample<N>(f, centr + dx);
    fv[j] = s1.value;
    fv[20 - j] = s2.value;
    for (std::size_t i = 0; i < N; ++i) {
      const double sum = s1.value[i] + s2.value[i];
      resk[i] += wgk[j] * sum;
      resabs[i] += wgk[j] * (std::abs(s1.value[i]) + std::abs(s2.value[i]));
      inner[i] += wgk[j] * (s1.error[i] + s2.error[i]);
      if (j % 2 == 1) resg[i] += wg[j / 2] * sum;
    }
  }
  Panel<N> p{lo, hi, {}, {}, 0.0, 0.0};
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < N; ++i) {
    const double reskh = resk[i] * 0.5;
    double asc = wgk[10] * std::abs(fv[10][i] - reskh);
    for (int j = 0; j < 10; ++j)
      asc += wgk[j] * (std::abs(fv[j][i] - reskh) + std::abs(fv[20 - j][i] - reskh));
    const double value = resk[i] * hlgth;
    double err = std::abs((resk[i] - resg[i]) * hlgth);
    const double ra = resabs[i] * dhlgth;
    asc *= dhlgth;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    if (ra > uflow / (50.0 * epmach)) err = std::max(epmach * 50.0 * ra, err);
    p.value[i] = value;
    p.error[i] = err + inner[i] * dhlgth;
    p.err_sum += err;
    p.abs_sum += ra;
  }
  return p;
}

}  // namespace detail

// Adaptive Gauss-Kronrod (G10/K21) integration of a vector-valued function on
// the finite interval [a, b], always refining the panel with the largest
// summed error. Interior breakpoints seed the initial panels. Never throws on
// non-convergence: check `converged`.
template <std::size_t N, class F>
VecResult<N> integrate_adaptive(F&& f, double a, double b, std::span<const double> breakpoints,
                                const Tolerance& tol) {
  VecResult<N> out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  std::vector<double> edges{a};
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  std::sort(bp.begin(), bp.end());
  for (double x : bp)
    if (x > edges.back() && x < b) edges.push_back(x);
  edges.push_back(b);

  std::priority_queue<detail::Panel<N>> heap;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) heap.push(detail::gk21<N>(f, edges[i], edges[i + 1]));
  int subdivisions = static_cast<int>(edges.size()) - 1;

  auto totals = [&](Vec<N>& value, Vec<N>& error) {
    // Sum in a fixed order (by panel position) so results do not depend on
    // heap layout.
    auto copy = heap;
    std::vector<detail::Panel<N>> panels;
    panels.reserve(copy.size());
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    value.fill(0.0);
    error.fill(0.0);
    for (const auto& p : panels)
      for (std::size_t i = 0; i < N; ++i) {
        value[i] += p.value[i];
        error[i] += p.error[i];
      }
  };

  // Running sums for the stopping test; exact totals are recomputed at the end.
  // The stopping test uses the panels' own error; errors inherited from
  // inner integrals are reported but cannot be reduced by refining here.
  // Below 100 eps * int|f| the estimate is rounding noise, which keeps
  // integrals that cancel to zero from refining forever.
  Vec<N> run_val{}, run_err{};
  double run_own = 0.0, run_abs = 0.0;
  totals(run_val, run_err);
  {
    auto copy = heap;
    for (; !copy.empty(); copy.pop()) {
      run_own += copy.top().err_sum;
      run_abs += copy.top().abs_sum;
    }
  }
  auto done = [&] {
    double e = run_own, m = 0.0;
    for (std::size_t i = 0; i < N; ++i) m += std::abs(run_val[i]);
    const double noise = 100.0 * std::numeric_limits<double>::epsilon() * run_abs;
    return e <= std::max({tol.rel * m, tol.abs, noise});
  };

  while (!done() && subdivisions < tol.max_subdivisions) {
    detail::Panel<N> worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // panel at machine resolution
    heap.pop();
    auto left = detail::gk21<N>(f, worst.lo, mid);
    auto right = detail::gk21<N>(f, mid, worst.hi);
    for (std::size_t i = 0; i < N; ++i) run_val[i] += left.value[i] + right.value[i] - worst.value[i];
    run_own += left.err_sum + right.err_sum - worst.err_sum;
    run_abs += left.abs_sum + right.abs_sum - worst.abs_sum;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  totals(out.value, out.error);
  run_val = out.value;
  run_own = 0.0;
  run_abs = 0.0;
  for (auto copy = heap; !copy.empty(); copy.pop()) {
    run_own += copy.top().err_sum;
    run_abs += copy.top().abs_sum;
  }
  out.converged = done();
  out.subdivisions = subdivisions;
  out.worst_lo = heap.top().lo;
  out.worst_hi = heap.top().hi;
  out.worst_error = heap.top().err_sum;
  return out;
}

// Integral over [a, inf) through x = a + scale * t / (1 - t), t in [0, 1).
// `scale` is the decay length of the integrand in x.
template <std::size_t N, class F>
VecResult<N> integrate_adaptive_semi_infinite(F&& f, double a, double scale, const Tolerance& tol) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    const double x = a + scale * t / om;
    const double jac = scale / (om * om);
    auto s = detail::call_sample<N>(f, x);
    for (std::size_t i = 0; i < N; ++i) {
      s.value[i] *= jac;
      s.error[i] *= jac;
    }
    return s;
  };
  auto r = integrate_adaptive<N>(g, 0.0, 1.0, {}, tol);
  // Report the worst panel in the original variable.
  r.worst_lo = a + scale * r.worst_lo / (1.0 - r.worst_lo);
  r.worst_hi = r.worst_hi < 1.0 ? a + scale * r.worst_hi / (1.0 - r.worst_hi)
                                : std::numeric_limits<double>::infinity();
  return r;
}

Tolerance tolerance_from(const QuadratureConfig& cfg);

// Scalar integration of f on [a, b] (b may be +infinity, in which case
// `scale` must be the integrand's decay length). Throws ConvergenceError
// carrying the worst panel when max_subdivisions is exhausted.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg, std::span<const double> breakpoints = {},
                        double scale = 1.0);

struct SeriesResult {
  double value = 0.0;
  double error = 0.0;
  int terms = 0;
};

struct TermEstimate {
  double value = 0.0;
  double error = 0.0;
};

// S = k_B T sum'_{n>=0} F(xi_n), xi_n = 2 pi n k_B T / hbar, n = 0 half
// weighted. At T = 0 the sum becomes (hbar / 2 pi) int_0^inf F(xi) dxi,
// integrated with `xi_scale` as decay length. Stops once the geometric tail
// bound of the last terms drops below rel_tol |S| (or abs_floor).
// Throws ConvergenceError if 1e5 terms are not enough.
SeriesResult matsubara_sum(double T, const std::function<TermEstimate(double)>& term,
                           const QuadratureConfig& cfg, double xi_scale);

}  // namespace casimir
