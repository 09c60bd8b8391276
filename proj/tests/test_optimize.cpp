#include <doctest.h>

#include <cmath>
#include <limits>

#include "rydhet/errors.hpp"
#include "rydhet/optimize.hpp"
#include "rydhet/readout.hpp"
#include "support.hpp"

using namespace rydhet;
using namespace rydhet::literals;
using rydhet::test::Drawer;
using rydhet::test::rel_err;

namespace {

AtomSystem ideal_atom() { return scenario_atom(cesium_atom(), {}); }

ReadoutConfig readout(ChiSign s) {
  ReadoutConfig r;
  r.chi_sign = s;
  return r;
}

}  // namespace

TEST_SUITE("optimize") {

// Frozen values from a 40-digit evaluation of the closed forms.
TEST_CASE("thin-medium optimal detuning") {
  const double expected[] = {0.573882579412481, 2.29553031764992, 5.16494321471233};
  int i = 0;
  for (double ol : {2_MHz, 4_MHz, 6_MHz}) {
    CHECK(rel_err(rad_s_to_mhz(delta_L_star_star(ideal_atom(), cesium_drive(ol))), expected[i++]) <
          1e-12);
  }
}

TEST_CASE("general-case optimal detuning in both sign conventions") {
  const double physical[] = {0.588479493592111, 2.35439042942696, 5.29796378892120};
  const double conjugate[] = {0.559099907894553, 2.23689690782691, 5.03363410586142};
  int i = 0;
  for (double ol : {2_MHz, 4_MHz, 6_MHz}) {
    const AtomSystem a = ideal_atom();
    const DriveConfig d = cesium_drive(ol);
    CHECK(rel_err(rad_s_to_mhz(delta_L_star(a, d, 0.01, ChiSign::Physical)), physical[i]) < 1e-12);
    CHECK(rel_err(rad_s_to_mhz(delta_L_star(a, d, 0.01, ChiSign::Conjugate)), conjugate[i]) <
          1e-12);
    ++i;
  }
}

TEST_CASE("thin-medium optimum at the symmetric point") {
  // Omega_p = Omega_c = Omega_L = gamma2 = g gives sqrt(3) g / 4.
  const double g = 3_MHz;
  const AtomSystem a = ideal_atom().modified([&](AtomParams& p) { p.gamma2 = g; });
  const DriveConfig d = cesium_drive(g).modified([&](DriveParams& p) {
    p.omega_p = g;
    p.omega_c = g;
  });
  CHECK(rel_err(delta_L_star_star(a, d), std::sqrt(3.0) * g / 4) < 1e-15);
}

TEST_CASE("general-case optimum is homogeneous of degree one at fixed C") {
  // C is dimensionless; rescaling it with the rates breaks homogeneity.
  const AtomSystem a = ideal_atom();
  const DriveConfig d = cesium_drive(4_MHz);
  const double c = attenuation_constant(a, 0.01, ChiSign::Physical);
  const double ref = delta_L_star_for_constant(a, d, c);
  for (double alpha : {0.1, 0.5, 3.0, 17.0}) {
    const AtomSystem as = a.modified([&](AtomParams& p) { p.gamma2 *= alpha; });
    const DriveConfig ds = d.modified([&](DriveParams& p) {
      p.omega_p *= alpha;
      p.omega_c *= alpha;
      p.omega_L *= alpha;
    });
    CHECK(rel_err(delta_L_star_for_constant(as, ds, c), alpha * ref) < 1e-13);
    CHECK(rel_err(delta_L_star_for_constant(as, ds, c / alpha), alpha * ref) > 1e-3);
  }
}

TEST_CASE("general-case and thin-medium optima are within 5% of each other") {
  for (ChiSign s : {ChiSign::Physical, ChiSign::Conjugate})
    for (double ol : {2_MHz, 4_MHz, 6_MHz}) {
      const DriveConfig d = cesium_drive(ol);
      CHECK(rel_err(solve_p1(cesium_atom(), d, readout(s)).optimum,
                    solve_p2(cesium_atom(), d, readout(s)).optimum) < 0.05);
    }
}

TEST_CASE("optima are never worse than the resonant point on random drives") {
  Drawer dr(4242);
  for (int k = 0; k < 60; ++k) {
    const DriveConfig d = cesium_drive(mhz_to_rad_s(dr.uniform(0.5, 10)))
                              .modified([&](DriveParams& p) {
                                p.omega_p = mhz_to_rad_s(dr.uniform(0.5, 10));
                                p.omega_c = mhz_to_rad_s(dr.uniform(0.5, 10));
                              });
    const ReadoutConfig r = readout(k % 2 ? ChiSign::Conjugate : ChiSign::Physical);
    for (Problem p : {Problem::P1, Problem::P2, Problem::P3, Problem::P4}) {
      const auto rep = solve(p, cesium_atom(), d, r);
      INFO("draw " << k << " " << to_string(p));
      CHECK(rep.gain_db >= -1e-9);
      CHECK(std::abs(rep.kappa_at_optimum) >= std::abs(rep.kappa_at_zero) * (1 - 1e-12));
    }
  }
}

TEST_CASE("attenuation constant") {
  CHECK(rel_err(attenuation_constant(ideal_atom(), 0.01, ChiSign::Physical), 0.348383734143497) <
        1e-12);
  CHECK(attenuation_constant(ideal_atom(), 0.01, ChiSign::Conjugate) ==
        -attenuation_constant(ideal_atom(), 0.01, ChiSign::Physical));
  CHECK_THROWS_AS(attenuation_constant(ideal_atom(), 0.0, ChiSign::Physical), DomainError);
}

TEST_CASE("general-case optimum tends to the thin-medium optimum as C -> 0") {
  for (double ol : {1_MHz, 2_MHz, 4_MHz, 6_MHz, 9_MHz}) {
    const AtomSystem a = ideal_atom();
    const DriveConfig d = cesium_drive(ol);
    CHECK(delta_L_star_for_constant(a, d, 0.0) == doctest::Approx(delta_L_star_star(a, d)).epsilon(1e-14));
    for (double c : {1e-3, -1e-3, 1e-6})
      CHECK(rel_err(delta_L_star_for_constant(a, d, c), delta_L_star_star(a, d)) < 2 * std::abs(c));
  }
}

TEST_CASE("closed-form optima are stationary points of |kappa| and |kappa'|") {
  const AtomSystem a = ideal_atom();
  for (ChiSign s : {ChiSign::Physical, ChiSign::Conjugate}) {
    const ReadoutConfig r = readout(s);
    for (double ol : {2_MHz, 4_MHz, 6_MHz}) {
      const DriveConfig d = cesium_drive(ol);
      auto k = [&](double x) { return std::abs(conversion_general(chi_decompose_local(a, d, x), a, r)); };
      auto kp = [&](double x) {
        return std::abs(conversion_high_transmittance(chi_decompose_local(a, d, x), a, r));
      };
      const double x1 = delta_L_star(a, d, a.cell_length(), s), x2 = delta_L_star_star(a, d);
      for (double f : {0.99, 1.01}) {
        CHECK(k(x1) > k(f * x1));
        CHECK(kp(x2) > kp(f * x2));
      }
    }
  }
}

TEST_CASE("grid refinement locates a parabola vertex") {
  const double x0 = 0.123456789;
  auto f = [&](double x) { return 3.0 - (x - x0) * (x - x0); };
  const GridResult g = grid_refine_argmax(f, -1, 1, 101, 60, 1);
  CHECK(g.argmax == doctest::Approx(x0).epsilon(1e-7));
  CHECK(g.value == doctest::Approx(3.0));
  CHECK(g.bracket < 1e-10);
  // Signed minimum sits on a window edge.
  CHECK(std::abs(g.partner_argmax) == doctest::Approx(1.0));
}

TEST_CASE("grid refinement picks the extremum with the larger magnitude") {
  auto f = [](double x) { return std::exp(-(x - 1) * (x - 1)) - 2 * std::exp(-(x + 1) * (x + 1)); };
  const GridResult g = grid_refine_argmax(f, -4, 4, 401, 60, 2);
  CHECK(g.value < 0);
  // The positive lobe's tail pulls the minimum slightly below -1.
  CHECK(g.argmax < -1.0);
  CHECK(g.argmax > -1.05);
  const double h = 1e-5;
  CHECK(std::abs(f(g.argmax + h) - f(g.argmax - h)) / (2 * h) < 1e-6);
  CHECK(g.partner_value > 0);
}

TEST_CASE("grid refinement does not depend on the thread count") {
  auto f = [](double x) { return std::sin(3 * x) * std::exp(-x * x); };
  const GridResult a = grid_refine_argmax(f, -3, 3, 1001, 40, 1);
  const GridResult b = grid_refine_argmax(f, -3, 3, 1001, 40, 4);
  CHECK(a.argmax == b.argmax);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("grid refinement rejects NaN objectives and bad grids") {
  auto f = [](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x; };
  try {
    grid_refine_argmax(f, 0, 1, 11, 10, 1);
    FAIL("NaN objective accepted");
  } catch (const NumericalError& e) {
    CHECK(e.detail() > 0.5);
  }
  auto g = [](double x) { return x; };
  CHECK_THROWS_AS(grid_refine_argmax(g, 0, 1, 2), DomainError);
  CHECK_THROWS_AS(grid_refine_argmax(g, 1, 0, 11), DomainError);
}

TEST_CASE("P1 and P2 agree with the grid search") {
  for (ChiSign s : {ChiSign::Physical, ChiSign::Conjugate}) {
    for (double ol : {2_MHz, 4_MHz, 6_MHz}) {
      const auto p1 = solve_p1(cesium_atom(), cesium_drive(ol), readout(s));
      const auto p2 = solve_p2(cesium_atom(), cesium_drive(ol), readout(s));
      REQUIRE(p1.grid);
      REQUIRE(p2.grid);
      CHECK(std::abs(std::abs(p1.grid->argmax) - p1.optimum) < 10_kHz);
      CHECK(std::abs(std::abs(p2.grid->argmax) - p2.optimum) < 10_kHz);
      CHECK(p1.partner_optimum == -p1.optimum);
      CHECK(p1.gain_db > 0);
      CHECK(p1.method == Method::ClosedForm);
    }
  }
}

TEST_CASE("P1 reports a disagreement between the closed form and the grid") {
  OptimizeOptions o;
  o.window_lo = 10_MHz;
  o.window_hi = 50_MHz;
  CHECK_THROWS_AS(solve_p1(cesium_atom(), cesium_drive(4_MHz), ReadoutConfig{}, o),
                  ConsistencyError);
}

TEST_CASE("P3 and P4 return both lobes") {
  const ReadoutConfig r = readout(ChiSign::Conjugate);
  const auto p3 = solve_p3(cesium_atom(), cesium_drive(4_MHz), r);
  const auto p4 = solve_p4(cesium_atom(), cesium_drive(4_MHz), r);
  for (const auto& p : {p3, p4}) {
    CHECK(p.method == Method::GridRefine);
    CHECK(std::abs(p.kappa_at_optimum) >= std::abs(p.partner_kappa));
    CHECK(p.kappa_at_optimum * p.partner_kappa < 0);
    CHECK(p.gain_db > 0);
  }
}

TEST_CASE("P5 degradation curve") {
  const ReadoutConfig r = readout(ChiSign::Conjugate);
  const auto p5 = solve_p5(cesium_atom(), cesium_drive(4_MHz), r);
  REQUIRE(p5.curve.size() == 21);
  CHECK(p5.curve.front().x == 0.0);
  CHECK(p5.curve.front().gain_db == 0.0);
  CHECK(p5.curve_strictly_decreasing);
  CHECK(p5.optimum == 0.0);
  CHECK(p5.gain_db == 0.0);
  CHECK(p5.curve.back().gain_db < -5);
}

TEST_CASE("P5 at a weak local field is not monotone") {
  // chi1 changes sign with gamma when Omega_L is below the optimal local Rabi frequency.
  const auto p5 = solve_p5(cesium_atom(), cesium_drive(2_MHz), ReadoutConfig{});
  CHECK_FALSE(p5.curve_strictly_decreasing);
  CHECK_FALSE(p5.warnings.empty());
}

TEST_CASE("problem names") {
  CHECK(parse_problem("p3") == Problem::P3);
  CHECK_FALSE(parse_problem("p6"));
  CHECK(std::string(to_string(Problem::P5)) == "p5");
  CHECK(std::string(to_string(Method::Sweep)) == "sweep");
}

}  // TEST_SUITE
