#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rydhet/model.hpp"

namespace rydhet::test {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

struct RandomDraw {
  AtomSystem atom;
  DriveConfig drive;
  double phase;
};

// gamma2 stays at the Cs value; other relaxation rates in [0, 2pi 1 MHz],
// Rabi frequencies in 2pi [0.5, 10] MHz, detunings in 2pi [-20, 20] MHz,
// Omega_s < Omega_L / 10.
class Drawer {
public:
  explicit Drawer(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  RandomDraw next() {
    AtomParams ap = cesium_atom().params();
    ap.gamma3 = mhz_to_rad_s(uniform(0, 1));
    ap.gamma4 = mhz_to_rad_s(uniform(0, 1));
    ap.gamma_c = mhz_to_rad_s(uniform(0, 1));
    ap.gamma_t = mhz_to_rad_s(uniform(0, 1));
    DriveParams dp;
    dp.omega_p = mhz_to_rad_s(uniform(0.5, 10));
    dp.omega_c = mhz_to_rad_s(uniform(0.5, 10));
    dp.omega_L = mhz_to_rad_s(uniform(0.5, 10));
    dp.omega_s = uniform(0, 0.1) * dp.omega_L;
    dp.delta_p = mhz_to_rad_s(uniform(-20, 20));
    dp.delta_c = mhz_to_rad_s(uniform(-20, 20));
    dp.delta_L = mhz_to_rad_s(uniform(-20, 20));
    dp.phi_s = uniform(0, 2 * std::numbers::pi);
    return {AtomSystem(ap), DriveConfig(dp), uniform(0, 2 * std::numbers::pi)};
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline constexpr int kPropertyDraws = 200;

}  // namespace rydhet::test
