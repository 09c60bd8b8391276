#pragma once

// Rotating-frame master equation for the four-level ladder:
//   d rho/dt = -(i/hbar)[H, rho] - (Gamma rho + rho Gamma)/2 + Lambda(rho)
// in vectorized (row-major, vec(rho)[4i+j] = rho_ij) form, plus the
// trace-constrained steady-state solve and adaptive time evolution.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rydhet/model.hpp"

namespace rydhet {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using SuperMatrix = Eigen::Matrix<cplx, 16, 16>;
using SuperVector = Eigen::Matrix<cplx, 16, 1>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPopulationTol = 1e-10;

class DensityMatrix {
public:
  DensityMatrix() = default;
  explicit DensityMatrix(const Matrix4c& rho) : rho_(rho) {}

  static DensityMatrix ground_state();
  static DensityMatrix from_vector(const SuperVector& v);

  const Matrix4c& matrix() const { return rho_; }
  SuperVector vectorized() const;
  cplx operator()(int i, int j) const { return rho_(i, j); }
  /// rho_21 in 1-based level labels, i.e. rho(1, 0).
  cplx rho21() const { return rho_(1, 0); }
  cplx trace() const { return rho_.trace(); }

  double hermiticity_error() const;
  double trace_error() const;
  /// Largest excursion of a diagonal entry outside [0, 1] or off the real axis.
  double population_error() const;
  bool satisfies_invariants(double herm_tol = kHermitianTol, double trace_tol = kTraceTol,
                            double pop_tol = kPopulationTol) const;

  double frobenius_distance(const DensityMatrix& other) const {
    return (rho_ - other.rho_).norm();
  }

private:
  Matrix4c rho_ = Matrix4c::Zero();
};

/// Rotating-frame Hamiltonian in joules, with the (3,4) coupling
/// hbar (Omega_L + Omega_s e^{-i phase}) / 2.
Matrix4c build_hamiltonian(const DriveConfig& drive, double phase);

/// Gamma = diag(g, g + g2, g + g3 + gc, g + g4) and the repopulation map.
struct Relaxation {
  Eigen::Vector4d gamma_diag;  // rad/s
  double gamma_t = 0, gamma2 = 0, gamma3 = 0, gamma4 = 0, gamma_c = 0;

  Eigen::Matrix4d gamma() const { return gamma_diag.asDiagonal(); }
  /// Lambda(rho) = diag(g + g2 rho22 + g4 rho44 + gc rho33, g3 rho33, 0, 0).
  Matrix4c repopulation(const Matrix4c& rho) const;
  /// -(Gamma rho + rho Gamma)/2 + Lambda(rho).
  Matrix4c dissipator(const Matrix4c& rho) const;
};

Relaxation build_relaxation(const AtomSystem& atom);

/// Affine map vec(rho) -> superop * vec(rho) + inhomogeneous.
struct LiouvillianOperator {
  SuperMatrix superop;
  SuperVector inhomogeneous;

  SuperVector apply(const SuperVector& v) const { return superop * v + inhomogeneous; }
  Matrix4c apply(const DensityMatrix& rho) const;
};

LiouvillianOperator build_liouvillian(const AtomSystem& atom, const DriveConfig& drive,
                                      double phase);

/// Largest condition number accepted by steady_state.
inline constexpr double kMaxConditionNumber = 1e12;

struct SteadyStateResult {
  DensityMatrix rho;
  double condition_estimate = 0;
  double residual = 0;  // || L vec(rho) + c ||_2
  double operator_norm = 0;  // || L ||_2 (Frobenius bound)
};

/// Steady state at frozen beat phase; one row of the vectorized system is
/// replaced by the trace constraint. Throws NumericalError (detail = condition
/// estimate) if the system is singular or worse than kMaxConditionNumber.
SteadyStateResult steady_state_detailed(const AtomSystem& atom, const DriveConfig& drive,
                                        double phase);
DensityMatrix steady_state(const AtomSystem& atom, const DriveConfig& drive, double phase);

struct EvolveOptions {
  double atol = 1e-10;
  double rtol = 1e-10;
  double dt_max = 0;  // 0 -> unlimited
  /// Record one trajectory point per sample_dt of simulated time (the first
  /// accepted step at or past each multiple). 0 records every accepted step.
  double sample_dt = 0;
  long max_steps = 200'000'000;
};

struct TrajectoryPoint {
  double t;
  DensityMatrix rho;
};

/// Integrates the master equation from rho0 over [0, t_end]; the beat phase
/// advances as S(t) = 2 pi delta_beat t + phi_s. The first and last points are
/// always recorded.
std::vector<TrajectoryPoint> evolve(const AtomSystem& atom, const DriveConfig& drive,
                                    const DensityMatrix& rho0, double t_end,
                                    const EvolveOptions& opts = {});

/// Same integration, but only the final state is kept.
DensityMatrix evolve_final(const AtomSystem& atom, const DriveConfig& drive,
                           const DensityMatrix& rho0, double t_end,
                           const EvolveOptions& opts = {});

/// Slowest nonzero relaxation rate of the Liouvillian at phase phi_s, 1/s.
/// Useful for choosing integration horizons.
double slowest_relaxation_rate(const AtomSystem& atom, const DriveConfig& drive);

/// First accepted time t (starting from the ground state) with
/// ||rho(t) - rho_ss||_F < epsilon ||rho(0) - rho_ss||_F. Throws TimeoutError
/// if the horizon is reached first.
double settling_time(const AtomSystem& atom, const DriveConfig& drive, double epsilon,
                     double horizon = 1e-3, const EvolveOptions& opts = {});

}  // namespace rydhet
