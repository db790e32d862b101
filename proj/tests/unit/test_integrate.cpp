#include <casimir/constants.hpp>
#include <casimir/integrate.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace casimir;
using constants::pi;

TEST(Adaptive, Polynomial) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  const auto r = integrate_1d([](double x) { return x * x; }, 0.0, 1.0, cfg);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
}

TEST(Adaptive, PlanckIntegral) {
  QuadratureConfig cfg;
  auto planck = [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); };
  const double want = std::pow(pi, 4) / 15.0;
  const auto r = integrate_1d(planck, 0.0, INFINITY, cfg, {}, 3.0);
  EXPECT_NEAR(r.value / want, 1.0, cfg.rel_tol);
  EXPECT_LE(r.error, cfg.rel_tol * r.value);
  const auto f = integrate_1d(planck, 0.0, 60.0, cfg);
  EXPECT_NEAR(f.value / want, 1.0, cfg.rel_tol);
}

TEST(Adaptive, DiscontinuityWithAndWithoutSplit) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  auto step = [](double x) { return x < 0.3183 ? 1.0 : 2.0; };
  const double want = 0.3183 + 2.0 * (1.0 - 0.3183);
  const double bp[] = {0.3183};
  const auto with = integrate_1d(step, 0.0, 1.0, cfg, bp);
  EXPECT_NEAR(with.value, want, 1e-12);
  EXPECT_EQ(with.subdivisions, 2);
  QuadratureConfig tight = cfg;
  tight.max_subdivisions = 10;
  EXPECT_THROW(integrate_1d(step, 0.0, 1.0, tight), ConvergenceError);
  const auto without = integrate_1d(step, 0.0, 1.0, cfg);
  EXPECT_NEAR(without.value, want, 1e-9);
  EXPECT_GT(without.subdivisions, with.subdivisions);
}

TEST(Adaptive, ConvergenceErrorCarriesWorstPanel) {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 5;
  cfg.rel_tol = 1e-12;
  try {
    integrate_1d([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.7)); }, 0.0, 1.0, cfg);
    FAIL() << "expected a convergence failure";
  } catch (const ConvergenceError& e) {
    EXPECT_LE(e.worst_panel_lo(), 0.7);
    EXPECT_GE(e.worst_panel_hi(), 0.7);
    EXPECT_GT(e.worst_panel_error(), 0.0);
  }
}

TEST(Adaptive, CancellationToZeroTerminates) {
  // A relative target cannot be met when the integral is exactly zero; the
  // rounding floor relative to int|f| has to stop the refinement.
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_floor = 1e-300;
  auto f = [](double x) { return std::sin(6.0 * pi * x) * (1.0 + x * (1.0 - x)); };
  const auto r = integrate_1d(f, 0.0, 1.0, cfg);
  EXPECT_LT(std::abs(r.value), 1e-14);
  EXPECT_LT(r.subdivisions, 200);
}

TEST(Adaptive, VectorComponentsShareRefinement) {
  Tolerance tol{1e-10, 0.0, 2000};
  auto f = [](double x) { return Vec<2>{std::sin(x), std::cos(x)}; };
  const auto r = integrate_adaptive<2>(f, 0.0, pi / 2.0, {}, tol);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value[0], 1.0, 1e-12);
  EXPECT_NEAR(r.value[1], 1.0, 1e-12);
}

TEST(Adaptive, InnerErrorsPropagate) {
  Tolerance tol{1e-8, 0.0, 2000};
  auto f = [](double x) {
    Sample<1> s;
    s.value[0] = x;
    s.error[0] = 1e-3;
    return s;
  };
  const auto r = integrate_adaptive<1>(f, 0.0, 2.0, {}, tol);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.error[0], 2e-3, 1e-9);
}

TEST(Adaptive, ToleranceMonotonicity) {
  auto peaky = [](double x) { return 1.0 / (1e-4 + (x - 0.37) * (x - 0.37)) + std::sin(40.0 * x); };
  double last = INFINITY;
  for (double tol = 1e-3; tol >= 1e-12; tol *= 0.5) {
    QuadratureConfig cfg;
    cfg.rel_tol = tol;
    const auto r = integrate_1d(peaky, 0.0, 1.0, cfg);
    EXPECT_LE(r.error, last) << "rel_tol " << tol;
    last = r.error;
  }
}

TEST(Adaptive, Deterministic) {
  QuadratureConfig cfg;
  auto f = [](double x) { return std::exp(-x) * std::cos(7.0 * x); };
  const auto a = integrate_1d(f, 0.0, INFINITY, cfg, {}, 1.0);
  const auto b = integrate_1d(f, 0.0, INFINITY, cfg, {}, 1.0);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.error, b.error);
  EXPECT_NEAR(a.value, 1.0 / 50.0, 1e-8);
}

TEST(Config, Validation) {
  QuadratureConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.rel_tol = 0.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_subdivisions = 0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = {};
  cfg.evanescent_cut_factor = -1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(Matsubara, ZeroTerms) {
  QuadratureConfig cfg;
  const auto s = matsubara_sum(300.0, [](double) { return TermEstimate{0.0, 0.0}; }, cfg, 1e14);
  EXPECT_EQ(s.value, 0.0);
  const auto z = matsubara_sum(0.0, [](double) { return TermEstimate{0.0, 0.0}; }, cfg, 1e14);
  EXPECT_EQ(z.value, 0.0);
}

TEST(Matsubara, GeometricSeries) {
  // F(xi) = e^{-xi / s}: k_B T (1/2 + q/(1-q)) with q = e^{-step/s}.
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_floor = 1e-300;
  const double T = 50.0, s = 1e14;
  const double kT = constants::k_B * T;
  const double step = 2.0 * pi * kT / constants::hbar;
  const double q = std::exp(-step / s);
  const auto r = matsubara_sum(T, [&](double xi) { return TermEstimate{std::exp(-xi / s), 0.0}; }, cfg, s);
  EXPECT_NEAR(r.value / (kT * (0.5 + q / (1.0 - q))), 1.0, 1e-11);
}

TEST(Matsubara, ZeroTemperatureIsIntegral) {
  QuadratureConfig cfg;
  const double s = 1e14;
  const auto r = matsubara_sum(0.0, [&](double xi) { return TermEstimate{std::exp(-xi / s), 0.0}; }, cfg, s);
  EXPECT_NEAR(r.value / (constants::hbar / (2.0 * pi) * s), 1.0, 1e-9);
}

TEST(Matsubara, NonDecayingSeriesFails) {
  QuadratureConfig cfg;
  EXPECT_THROW(matsubara_sum(300.0, [](double) { return TermEstimate{1.0, 0.0}; }, cfg, 1e14), ConvergenceError);
}
