#include <casimir/constants.hpp>
#include <casimir/errors.hpp>
#include <casimir/materials.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

using namespace casimir;

namespace {

DielectricModel lorentz() { return DielectricModel::drude_lorentz(1.0, {{1e15, 1e15, 0.0}}); }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Permittivity, Vacuum) {
  for (double w : {1e10, 1e14, 1e18}) EXPECT_EQ(permittivity(DielectricModel::vacuum(), w), std::complex<double>(1.0, 0.0));
}

TEST(Permittivity, LorentzStaticLimit) {
  const auto e = permittivity(lorentz(), 1.0);
  EXPECT_NEAR(e.real(), 2.0, 1e-12);
  EXPECT_EQ(e.imag(), 0.0);
  EXPECT_DOUBLE_EQ(static_permittivity(lorentz()), 2.0);
}

TEST(Permittivity, DrudeLorentzFormula) {
  const auto m = DielectricModel::drude_lorentz(1.5, {{2e14, 3e14, 1e13}, {0.0, 1e15, 5e13}});
  const double w = 1.7e14;
  const std::complex<double> want =
      1.5 + 9e28 / std::complex<double>(4e28 - w * w, -1e13 * w) + 1e30 / std::complex<double>(-w * w, -5e13 * w);
  const auto got = permittivity(m, w);
  EXPECT_NEAR(got.real(), want.real(), 1e-12 * std::abs(want));
  EXPECT_NEAR(got.imag(), want.imag(), 1e-12 * std::abs(want));
  EXPECT_TRUE(std::isinf(static_permittivity(m)));
}

TEST(Permittivity, TabulatedLogInterpolation) {
  const auto m = DielectricModel::tabulated({{1e14, 2.0, 0.1}, {4e14, 5.0, 0.4}});
  // 2e14 sits halfway between the samples in log omega.
  const auto e = permittivity(m, 2e14);
  EXPECT_NEAR(e.real(), 3.5, 1e-14);
  EXPECT_NEAR(e.imag(), 0.25, 1e-14);
  EXPECT_EQ(permittivity(m, 1e13), std::complex<double>(2.0, 0.0));
  EXPECT_EQ(permittivity(m, 1e15), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(permittivity(m, 4e14), std::complex<double>(5.0, 0.4));
}

TEST(Permittivity, Errors) {
  EXPECT_THROW(permittivity(DielectricModel::perfect_mirror(), 1e14), UnsupportedModelError);
  EXPECT_THROW(permittivity(DielectricModel::perfect_absorber(), 1e14), UnsupportedModelError);
  EXPECT_THROW(permittivity(lorentz(), 0.0), DomainError);
  EXPECT_THROW(permittivity(lorentz(), -1.0), DomainError);
  EXPECT_THROW(DielectricModel::drude_lorentz(0.5, {}), DomainError);
  EXPECT_THROW(DielectricModel::drude_lorentz(1.0, {{1e14, 0.0, 0.0}}), DomainError);
  EXPECT_THROW(DielectricModel::constant({2.0, -0.1}), DomainError);
}

TEST(ImagAxis, ClosedForms) {
  EXPECT_EQ(permittivity_imag_axis(DielectricModel::vacuum(), 1e14), 1.0);
  EXPECT_DOUBLE_EQ(permittivity_imag_axis(lorentz(), 1e15), 1.5);
  EXPECT_EQ(permittivity_imag_axis(DielectricModel::constant({3.0, 0.0}), 1e14), 3.0);
  EXPECT_THROW(permittivity_imag_axis(DielectricModel::perfect_mirror(), 1e14), UnsupportedModelError);
  EXPECT_THROW(permittivity_imag_axis(DielectricModel::constant({3.0, 0.1}), 1e14), UnsupportedModelError);
  EXPECT_THROW(permittivity_imag_axis(lorentz(), 0.0), DomainError);
}

TEST(ImagAxis, LosslessTableIsOne) {
  const auto m = DielectricModel::tabulated({{1e14, 2.0, 0.0}, {2e14, 3.0, 0.0}});
  EXPECT_EQ(permittivity_imag_axis(m, 1e14), 1.0);
}

TEST(ImagAxis, KramersKronigMatchesAnalyticLorentzian) {
  const auto analytic = DielectricModel::drude_lorentz(1.0, {{1e15, 8e14, 5e13}});
  std::vector<OpticalSample> s;
  for (int i = 0; i <= 3000; ++i) {
    const double w = std::pow(10.0, 12.0 + 5.0 * i / 3000.0);
    const auto e = permittivity(analytic, w);
    s.push_back({w, e.real(), e.imag()});
  }
  const auto table = DielectricModel::tabulated(s);
  for (double xi : {1e13, 3e14, 1e15, 4e15, 2e16}) {
    const double want = permittivity_imag_axis(analytic, xi);
    EXPECT_NEAR(permittivity_imag_axis(table, xi), want, 0.01 * want) << "xi = " << xi;
  }
}

TEST(Ingestion, ElectronVoltConversion) {
  const auto f = parse_optical_csv("energy_eV,eps_re,eps_im\n1.0,2,0.1\n");
  const auto m = ingest_optical_data(f);
  const auto& t = std::get<model::Tabulated>(m.data());
  ASSERT_EQ(t.samples.size(), 1u);
  const double e_over_hbar = constants::e_charge / constants::hbar;
  EXPECT_NEAR(t.samples[0].omega, e_over_hbar, 1e-12 * e_over_hbar);
  EXPECT_NEAR(t.samples[0].omega, 1.519e15, 0.001e15);
  EXPECT_EQ(t.samples[0].eps_re, 2.0);
  EXPECT_EQ(t.samples[0].eps_im, 0.1);
}

TEST(Ingestion, WavelengthNk) {
  const auto m = ingest_optical_data(parse_optical_csv("wavelength_um,n,k\n1.0,1,0\n2.0,1.5,0.2\n"));
  const auto& t = std::get<model::Tabulated>(m.data());
  ASSERT_EQ(t.samples.size(), 2u);
  // Longer wavelength comes first after sorting by omega.
  EXPECT_NEAR(t.samples[1].omega, 2.0 * constants::pi * constants::c / 1e-6, 1e3);
  EXPECT_NEAR(t.samples[1].omega, 1.884e15, 0.001e15);
  EXPECT_EQ(t.samples[1].eps_re, 1.0);
  EXPECT_EQ(t.samples[1].eps_im, 0.0);
  EXPECT_NEAR(t.samples[0].eps_re, 1.5 * 1.5 - 0.2 * 0.2, 1e-15);
  EXPECT_NEAR(t.samples[0].eps_im, 2.0 * 1.5 * 0.2, 1e-15);
}

TEST(Ingestion, SortsRows) {
  const auto m = ingest_optical_data(parse_optical_csv(
      "# comment\nenergy_eV,eps_re,eps_im\n3.0,1,0\n\n1.0,2,0.1\n2.0,3,0.2\n"));
  const auto& t = std::get<model::Tabulated>(m.data());
  ASSERT_EQ(t.samples.size(), 3u);
  EXPECT_EQ(t.samples[0].eps_re, 2.0);
  EXPECT_EQ(t.samples[1].eps_re, 3.0);
  EXPECT_EQ(t.samples[2].eps_re, 1.0);
}

TEST(Ingestion, DuplicateRowsNamed) {
  try {
    ingest_optical_data(parse_optical_csv("energy_eV,eps_re,eps_im\n1.0,2,0.1\n2.0,3,0.2\n1.0,2,0.3\n"));
    FAIL() << "duplicate accepted";
  } catch (const IngestionError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2"), std::string::npos);
    EXPECT_NE(what.find("4"), std::string::npos);
  }
}

TEST(Ingestion, Rejections) {
  EXPECT_THROW(ingest_optical_data(parse_optical_csv("energy_eV,eps_re,eps_im\n1.0,2,-0.1\n")), IngestionError);
  EXPECT_THROW(parse_optical_csv("energy,eps_re,eps_im\n1.0,2,0.1\n"), IngestionError);
  EXPECT_THROW(parse_optical_csv("energy_eV,eps_re,eps_im\n1.0,2\n"), IngestionError);
  EXPECT_THROW(parse_optical_csv("energy_eV,eps_re,eps_im\n1.0,x,0\n"), IngestionError);
  EXPECT_THROW(parse_optical_csv("energy_eV,eps_re,eps_im\n"), IngestionError);
  EXPECT_THROW(ingest_optical_data(parse_optical_csv("energy_eV,eps_re,eps_im\n-1.0,2,0.1\n")), IngestionError);
}

TEST(Ingestion, RoundTripIsBitExact) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<OpticalSample> s;
  double w = 1e13;
  for (int i = 0; i < 500; ++i) {
    w *= 1.0 + 0.02 * u(rng) + 1e-9;
    s.push_back({w, -20.0 + 40.0 * u(rng), 10.0 * u(rng) * u(rng)});
  }
  const auto m = DielectricModel::tabulated(s).named("random");
  const std::string text = emit_optical_csv(m);
  const auto back = ingest_optical_data(parse_optical_csv(text));
  const auto& a = std::get<model::Tabulated>(m.data()).samples;
  const auto& b = std::get<model::Tabulated>(back.data()).samples;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(same_bits(a[i].omega, b[i].omega)) << i;
    EXPECT_TRUE(same_bits(a[i].eps_re, b[i].eps_re)) << i;
    EXPECT_TRUE(same_bits(a[i].eps_im, b[i].eps_im)) << i;
  }
  EXPECT_EQ(emit_optical_csv(back.named("random")), text);
}

TEST(Ingestion, EmitRejectsAnalyticModels) {
  EXPECT_THROW(emit_optical_csv(lorentz()), UnsupportedModelError);
}

TEST(DrudeLorentzFile, Parses) {
  const auto m = parse_drude_lorentz(
      "# name: test metal\n# source note\neps_inf,1.2\nomega0_rad_s,omega_p_rad_s,gamma_rad_s\n0,1e16,5e13\n2e15,1e15,1e13\n");
  EXPECT_EQ(m.name(), "test metal");
  const auto& d = std::get<model::DrudeLorentz>(m.data());
  EXPECT_EQ(d.eps_inf, 1.2);
  ASSERT_EQ(d.oscillators.size(), 2u);
  EXPECT_EQ(d.oscillators[0].omega_p, 1e16);
  EXPECT_EQ(d.oscillators[1].omega0, 2e15);
  EXPECT_TRUE(m.is_lossy());
}

TEST(DrudeLorentzFile, Rejections) {
  EXPECT_THROW(parse_drude_lorentz("omega0_rad_s,omega_p_rad_s,gamma_rad_s\n0,1e16,5e13\n"), IngestionError);
  EXPECT_THROW(parse_drude_lorentz("eps_inf,0.5\nomega0_rad_s,omega_p_rad_s,gamma_rad_s\n0,1e16,5e13\n"),
               IngestionError);
  EXPECT_THROW(parse_drude_lorentz("eps_inf,1\nomega0_rad_s,omega_p_rad_s,gamma_rad_s\n0,1e16\n"), IngestionError);
}

TEST(Resonances, Reported) {
  const auto r = resonance_frequencies(DielectricModel::drude_lorentz(4.0, {{0.0, 2e16, 1e13}, {3e14, 1e14, 1e12}}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r[0], 3e14);
  EXPECT_DOUBLE_EQ(r[1], 1e16);
}

TEST(Models, Flags) {
  EXPECT_TRUE(DielectricModel::perfect_mirror().is_sentinel());
  EXPECT_TRUE(DielectricModel::perfect_absorber().is_sentinel());
  EXPECT_FALSE(lorentz().is_lossy());
  EXPECT_TRUE(DielectricModel::constant({2.0, 0.1}).is_lossy());
  EXPECT_FALSE(DielectricModel::vacuum().is_lossy());
}
