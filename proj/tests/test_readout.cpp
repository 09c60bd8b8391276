#include <doctest.h>

#include <cmath>

#include "rydhet/errors.hpp"
#include "rydhet/readout.hpp"
#include "support.hpp"

using namespace rydhet;
using namespace rydhet::literals;
using rydhet::test::Drawer;
using rydhet::test::rel_err;

namespace {

AtomSystem ideal_atom(double n_eff = 1e14) {
  return scenario_atom(cesium_atom(), {}).modified([&](AtomParams& p) { p.n_eff = n_eff; });
}

SusceptibilityDecomposition sample(const AtomSystem& a, double ol = 4_MHz, double dl = 1_MHz) {
  return chi_decompose_local(a, cesium_drive(ol), dl);
}

}  // namespace

TEST_SUITE("readout") {

TEST_CASE("conversion coefficients follow their definitions") {
  const AtomSystem a = ideal_atom();
  const auto dec = sample(a);
  ReadoutConfig r;
  r.input_power = 2e-3;
  const double kl = a.wavevector() * a.cell_length();
  CHECK(rel_err(dc_power(dec, a, r), 2e-3 * std::exp(-kl * dec.chi0)) < 1e-15);
  CHECK(rel_err(conversion_general(dec, a, r), -2e-3 * std::exp(-kl * dec.chi0) * kl * dec.chi1) <
        1e-15);
  CHECK(rel_err(conversion_high_transmittance(dec, a, r), -2e-3 * kl * dec.chi1) < 1e-15);
  r.detection_mode = DetectionMode::HighTransmittance;
  CHECK(conversion(dec, a, r) == conversion_high_transmittance(dec, a, r));
}

TEST_CASE("conjugate convention flips the sign of chi in the exponent") {
  const AtomSystem a = ideal_atom();
  const auto dec = sample(a);
  ReadoutConfig phys, conj;
  conj.chi_sign = ChiSign::Conjugate;
  const double kl = a.wavevector() * a.cell_length();
  CHECK(rel_err(dc_power(dec, a, conj), std::exp(kl * dec.chi0)) < 1e-15);
  CHECK(conversion_high_transmittance(dec, a, conj) == -conversion_high_transmittance(dec, a, phys));
  CHECK(chi_sign_factor(ChiSign::Conjugate) == -1.0);
}

TEST_CASE("general case tends to the high-transmittance case as kL chi0 -> 0") {
  double previous = 1.0;
  for (double n : {1e14, 1e12, 1e10, 1e8}) {
    const AtomSystem a = ideal_atom(n);
    const auto dec = sample(a);
    ReadoutConfig r;
    const double ratio = conversion_general(dec, a, r) / conversion_high_transmittance(dec, a, r);
    const double kl_chi0 = a.wavevector() * a.cell_length() * dec.chi0;
    CHECK(rel_err(ratio, std::exp(-kl_chi0)) < 1e-14);
    CHECK(std::abs(1 - ratio) < previous);
    previous = std::abs(1 - ratio);
  }
  CHECK(previous < 1e-7);
}

TEST_CASE("peak-to-peak power equals the swing of the transmitted power") {
  const AtomSystem a = ideal_atom();
  const auto dec = sample(a);
  ReadoutConfig r;
  const double os = 1_kHz;
  const double hi = transmitted_power(dec, a, r, os, std::numbers::pi);
  const double lo = transmitted_power(dec, a, r, os, 0.0);
  CHECK(rel_err(peak_to_peak(dec, a, r, os), std::abs(hi - lo)) < 1e-10);
  // Small-signal limit: P_pp ~ 2 |kappa| Omega_s.
  CHECK(rel_err(peak_to_peak(dec, a, r, os), 2 * std::abs(conversion_general(dec, a, r)) * os) <
        1e-6);
}

TEST_CASE("phase-averaged power obeys the Bessel bound") {
  // <P_i exp(-kL (chi0 + chi1 Os cos S))>_S = P_dc I0(kL chi1 Os) >= P_dc.
  Drawer dr(99);
  for (int k = 0; k < 20; ++k) {
    const AtomSystem a = ideal_atom();
    const auto dec = sample(a, mhz_to_rad_s(dr.uniform(1, 8)), mhz_to_rad_s(dr.uniform(-10, 10)));
    ReadoutConfig r;
    const double os = mhz_to_rad_s(dr.uniform(1e-4, 5e-2));
    const int n = 256;
    double avg = 0;
    for (int j = 0; j < n; ++j) avg += transmitted_power(dec, a, r, os, 2 * std::numbers::pi * j / n);
    avg /= n;
    const double x = a.wavevector() * a.cell_length() * dec.chi1 * os;
    const double pdc = dc_power(dec, a, r);
    CHECK(rel_err(avg, pdc * std::cyl_bessel_i(0.0, x)) < 1e-12);
    CHECK(avg >= pdc);
  }
}

TEST_CASE("gain in dB is antisymmetric and 10 log10 of the magnitude ratio") {
  CHECK(gain_db(2.0, 1.0) == doctest::Approx(10 * std::log10(2.0)));
  CHECK(gain_db(-2.0, 1.0) == doctest::Approx(10 * std::log10(2.0)));
  Drawer dr(3);
  for (int k = 0; k < 100; ++k) {
    const double a = dr.uniform(-5, 5), b = dr.uniform(0.1, 5);
    CHECK(gain_db(a, b) == doctest::Approx(-gain_db(b, a)).epsilon(1e-12));
  }
  CHECK(gain_db(1.0, 1.0) == 0.0);
  CHECK(gain_db(2.0, 1.0, 20.0) == doctest::Approx(20 * std::log10(2.0)));
  CHECK_THROWS_AS(gain_db(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(gain_db(1.0, std::nan("")), DomainError);
}

TEST_CASE("small-parameter warnings") {
  const AtomSystem a = ideal_atom();
  const auto dec = chi_decompose_local(a, cesium_drive(4_MHz), 0.0);
  ReadoutConfig r;
  CHECK(evaluate_readout(dec, a, r, 1_kHz).warnings.empty());
  const AtomSystem dense = ideal_atom(1e15);
  const auto dd = chi_decompose_local(dense, cesium_drive(4_MHz), 0.0);
  CHECK_FALSE(evaluate_readout(dd, dense, r, 1_MHz).warnings.empty());
  r.detection_mode = DetectionMode::HighTransmittance;
  const AtomSystem thick = ideal_atom(1e16);
  const auto dt = chi_decompose_local(thick, cesium_drive(4_MHz), 0.0);
  CHECK_FALSE(evaluate_readout(dt, thick, r, 1_Hz).warnings.empty());
}

TEST_CASE("evaluate_readout bundles the observables") {
  const AtomSystem a = ideal_atom();
  const auto dec = sample(a);
  ReadoutConfig r;
  const auto res = evaluate_readout(dec, a, r, 1_kHz);
  CHECK(res.p_dc == dc_power(dec, a, r));
  CHECK(res.kappa == conversion_general(dec, a, r));
  CHECK(res.kappa_prime == conversion_high_transmittance(dec, a, r));
  CHECK(res.p_pp == peak_to_peak(dec, a, r, 1_kHz));
}

TEST_CASE("optical depth beyond the representable range is rejected") {
  const AtomSystem a = ideal_atom(1e20);
  const auto dec = chi_decompose_local(a, cesium_drive(4_MHz), 0.0);
  CHECK_THROWS_AS(dc_power(dec, a, ReadoutConfig{}), RangeError);
}

}  // TEST_SUITE
