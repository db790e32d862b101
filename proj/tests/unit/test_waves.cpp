#include <casimir/errors.hpp>
#include <casimir/waves.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace casimir;
using constants::c;

TEST(KzVacuum, AxisAndLightLine) {
  EXPECT_DOUBLE_EQ(kz_vacuum(c, 0.0).real(), 1.0);
  EXPECT_EQ(kz_vacuum(c, 0.0).imag(), 0.0);
  EXPECT_EQ(kz_vacuum(c, 1.0), cplx(0.0, 0.0));
}

TEST(KzVacuum, EvanescentBranchDecays) {
  const cplx kz = kz_vacuum(c, 2.0);
  EXPECT_EQ(kz.real(), 0.0);
  EXPECT_NEAR(kz.imag(), std::sqrt(3.0), 1e-15);
}

TEST(KzVacuum, SectorBoundary) {
  EXPECT_EQ(sector_of(c, 1.0), Sector::Propagative);
  EXPECT_EQ(sector_of(c, std::nextafter(1.0, 2.0)), Sector::Evanescent);
}

TEST(KzMedium, RealPermittivity) {
  EXPECT_NEAR(kz_medium(1.0, c, 0.0).real(), 1.0, 1e-15);
  EXPECT_NEAR(kz_medium(4.0, c, 0.0).real(), 2.0, 1e-15);
}

TEST(KzMedium, ComplexPrincipalBranch) {
  // eps - k^2 = -0.25 + 0.5i; square root by modulus and half angle.
  const double re = -0.25, im = 0.5;
  const double r = std::sqrt(std::hypot(re, im));
  const double half = 0.5 * std::atan2(im, re);
  const cplx kz = kz_medium(cplx(2.0, 0.5), c, 1.5);
  EXPECT_GT(kz.imag(), 0.0);
  EXPECT_NEAR(kz.real(), r * std::cos(half), 1e-14);
  EXPECT_NEAR(kz.imag(), r * std::sin(half), 1e-14);
}

TEST(KzMedium, LossyEvanescentKeepsDecayingBranch) {
  const cplx kz = kz_medium(cplx(1.5, 1e-3), c, 3.0);
  EXPECT_GT(kz.imag(), 0.0);
}

TEST(Bose, ZeroTemperature) {
  EXPECT_EQ(bose_n(1e14, 0.0), 0.0);
  EXPECT_EQ(bose_n(1e-3, 0.0), 0.0);
}

TEST(Bose, UnitArgument) {
  const double T = 300.0;
  const double w = constants::k_B * T / constants::hbar;
  EXPECT_NEAR(bose_n(w, T), 1.0 / (std::exp(1.0) - 1.0), 1e-13);
  EXPECT_NEAR(bose_n(w, T), 0.581977, 1e-6);
}

TEST(Bose, ClassicalLimit) {
  const double T = 300.0;
  const double w = 0.01 * constants::k_B * T / constants::hbar;
  EXPECT_NEAR(bose_n(w, T) / 100.0, 1.0, 0.01);
}

TEST(Bose, UnderflowGuardAndMonotonicity) {
  const double T = 10.0;
  const double w = 701.0 * constants::k_B * T / constants::hbar;
  EXPECT_EQ(bose_n(w, T), 0.0);
  double last = 0.0;
  for (double t = 1.0; t <= 2000.0; t *= 1.3) {
    const double n = bose_n(1e14, t);
    EXPECT_GE(n, last);
    last = n;
  }
}

TEST(NDiff, Cases) {
  EXPECT_EQ(n_diff(1e14, 300.0, 300.0), 0.0);
  EXPECT_EQ(n_diff(1e14, 300.0, 0.0), bose_n(1e14, 300.0));
  EXPECT_DOUBLE_EQ(n_diff(1e14, 300.0, 400.0), bose_n(1e14, 300.0) - bose_n(1e14, 400.0));
}

TEST(PolDot, Values) {
  EXPECT_EQ(pol_dot_pm(Polarization::TE, 1e14, 3e5), 1.0);
  EXPECT_DOUBLE_EQ(pol_dot_pm(Polarization::TM, c, 0.0), -1.0);
  EXPECT_DOUBLE_EQ(pol_dot_pm(Polarization::TM, c, 1.0), 1.0);
  // Evanescent: 2k^2 c^2 / omega^2 - 1.
  EXPECT_DOUBLE_EQ(pol_dot_pm(Polarization::TM, c, 2.0), 7.0);
}

TEST(ThermalTriple, Validation) {
  EXPECT_NO_THROW((ThermalTriple{0.0, 300.0, 600.0}.validate()));
  EXPECT_THROW((ThermalTriple{-1.0, 0.0, 0.0}.validate()), DomainError);
  EXPECT_THROW((ThermalTriple{0.0, NAN, 0.0}.validate()), DomainError);
  EXPECT_EQ((ThermalTriple{1.0, 5.0, 3.0}.max()), 5.0);
}
