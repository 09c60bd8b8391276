#include "rydhet/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rydhet/errors.hpp"
#include "rydhet/ode.hpp"

namespace rydhet {
namespace {

constexpr cplx kI{0.0, 1.0};

/// H / hbar in rad/s.
Matrix4c angular_hamiltonian(const DriveConfig& d, double phase) {
  Matrix4c h = Matrix4c::Zero();
  h(0, 1) = h(1, 0) = 0.5 * d.omega_p();
  h(1, 2) = h(2, 1) = 0.5 * d.omega_c();
  const cplx mw = 0.5 * (d.omega_L() + d.omega_s() * std::polar(1.0, -phase));
  h(2, 3) = mw;
  h(3, 2) = std::conj(mw);
  h(1, 1) = d.delta_p();
  h(2, 2) = d.delta_p() + d.delta_c();
  h(3, 3) = d.delta_p() + d.delta_c() + d.delta_L();
  return h;
}

using RowMajor4c = Eigen::Matrix<cplx, 4, 4, Eigen::RowMajor>;

}  // namespace

DensityMatrix DensityMatrix::ground_state() {
  Matrix4c r = Matrix4c::Zero();
  r(0, 0) = 1.0;
  return DensityMatrix(r);
}

DensityMatrix DensityMatrix::from_vector(const SuperVector& v) {
  return DensityMatrix(Eigen::Map<const RowMajor4c>(v.data()));
}

SuperVector DensityMatrix::vectorized() const {
  SuperVector v;
  Eigen::Map<RowMajor4c>(v.data()) = rho_;
  return v;
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(rho_.trace() - 1.0); }

double DensityMatrix::population_error() const {
  double e = 0;
  for (int i = 0; i < 4; ++i) {
    const cplx p = rho_(i, i);
    e = std::max({e, std::abs(p.imag()), -p.real(), p.real() - 1.0});
  }
  return e;
}

bool DensityMatrix::satisfies_invariants(double herm_tol, double trace_tol,
                                         double pop_tol) const {
  return hermiticity_error() <= herm_tol && trace_error() <= trace_tol &&
         population_error() <= pop_tol;
}

Matrix4c build_hamiltonian(const DriveConfig& drive, double phase) {
  return PhysicalConstants::hbar * angular_hamiltonian(drive, phase);
}

Relaxation build_relaxation(const AtomSystem& atom) {
  Relaxation r;
  r.gamma_t = atom.gamma_t();
  r.gamma2 = atom.gamma2();
  r.gamma3 = atom.gamma3();
  r.gamma4 = atom.gamma4();
  r.gamma_c = atom.gamma_c();
  r.gamma_diag << r.gamma_t, r.gamma_t + r.gamma2, r.gamma_t + r.gamma3 + r.gamma_c,
      r.gamma_t + r.gamma4;
  return r;
}

Matrix4c Relaxation::repopulation(const Matrix4c& rho) const {
  Matrix4c l = Matrix4c::Zero();
  l(0, 0) = gamma_t + gamma2 * rho(1, 1) + gamma4 * rho(3, 3) + gamma_c * rho(2, 2);
  l(1, 1) = gamma3 * rho(2, 2);
  return l;
}

Matrix4c Relaxation::dissipator(const Matrix4c& rho) const {
  Matrix4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = -0.5 * (gamma_diag[i] + gamma_diag[j]) * rho(i, j);
  return out + repopulation(rho);
}

Matrix4c LiouvillianOperator::apply(const DensityMatrix& rho) const {
  return DensityMatrix::from_vector(apply(rho.vectorized())).matrix();
}

LiouvillianOperator build_liouvillian(const AtomSystem& atom, const DriveConfig& drive,
                                      double phase) {
  const Matrix4c h = angular_hamiltonian(drive, phase);
  const Relaxation rel = build_relaxation(atom);
  auto idx = [](int i, int j) { return 4 * i + j; };

  LiouvillianOperator op;
  op.superop.setZero();
  op.inhomogeneous.setZero();
  // -i (h rho - rho h): (h rho)_ij = sum_k h_ik rho_kj, (rho h)_ij = sum_k rho_ik h_kj.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        op.superop(idx(i, j), idx(k, j)) += -kI * h(i, k);
        op.superop(idx(i, j), idx(i, k)) += kI * h(k, j);
      }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      op.superop(idx(i, j), idx(i, j)) += -0.5 * (rel.gamma_diag[i] + rel.gamma_diag[j]);
  op.superop(idx(0, 0), idx(1, 1)) += rel.gamma2;
  op.superop(idx(0, 0), idx(3, 3)) += rel.gamma4;
  op.superop(idx(0, 0), idx(2, 2)) += rel.gamma_c;
  op.superop(idx(1, 1), idx(2, 2)) += rel.gamma3;
  op.inhomogeneous(idx(0, 0)) = rel.gamma_t;
  return op;
}

SteadyStateResult steady_state_detailed(const AtomSystem& atom, const DriveConfig& drive,
                                        double phase) {
  const LiouvillianOperator op = build_liouvillian(atom, drive, phase);

  // Row 0 (d rho11/dt) is replaced by the trace constraint, scaled to the
  // operator's magnitude so the condition estimate reflects the physics.
  const double scale = op.superop.cwiseAbs().rowwise().sum().maxCoeff();
  SuperMatrix a = op.superop;
  SuperVector b = -op.inhomogeneous;
  a.row(0).setZero();
  for (int i = 0; i < 4; ++i) a(0, 5 * i) = scale;
  b(0) = scale;

  Eigen::PartialPivLU<SuperMatrix> lu(a);
  const double rcond = lu.rcond();
  const double cond = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber))
    throw NumericalError("steady state: degenerate drive configuration (condition number " +
                             std::to_string(cond) + ")",
                         cond);

  const SuperVector v = lu.solve(b);
  SteadyStateResult res;
  res.rho = DensityMatrix::from_vector(v);
  res.condition_estimate = cond;
  res.residual = op.apply(v).norm();
  res.operator_norm = op.superop.norm();
  return res;
}

DensityMatrix steady_state(const AtomSystem& atom, const DriveConfig& drive, double phase) {
  return steady_state_detailed(atom, drive, phase).rho;
}

namespace {

template <class Observer>
void run_master_equation(const AtomSystem& atom, const DriveConfig& drive,
                         const DensityMatrix& rho0, double t_end, const EvolveOptions& opts,
                         Observer&& observe) {
  if (!(t_end > 0)) throw DomainError("t_end", "must be > 0");
  const Relaxation rel = build_relaxation(atom);
  const bool static_h = drive.omega_s() == 0.0 || drive.delta_beat() == 0.0;
  const Matrix4c h_static = angular_hamiltonian(drive, drive.phi_s());
  Matrix4c h_base = h_static;
  h_base(2, 3) = h_base(3, 2) = 0.5 * drive.omega_L();

  auto rhs = [&](double t, const SuperVector& v) -> SuperVector {
    const Eigen::Map<const RowMajor4c> rho(v.data());
    Matrix4c h;
    if (static_h) {
      h = h_static;
    } else {
      h = h_base;
      const cplx s = 0.5 * drive.omega_s() * std::polar(1.0, -drive.phase_at(t));
      h(2, 3) += s;
      h(3, 2) += std::conj(s);
    }
    const Matrix4c r = rho;
    Matrix4c d = -kI * (h * r - r * h) + rel.dissipator(r);
    SuperVector out;
    Eigen::Map<RowMajor4c>(out.data()) = d;
    return out;
  };

  ode::Tolerances tol;
  tol.atol = opts.atol;
  tol.rtol = opts.rtol;
  if (opts.dt_max > 0) tol.dt_max = opts.dt_max;
  tol.max_steps = opts.max_steps;
  // Resolve the beat: at least 20 steps per period.
  if (!static_h && !(opts.dt_max > 0)) tol.dt_max = 0.05 / std::abs(drive.delta_beat());

  SuperVector y = rho0.vectorized();
  ode::integrate(rhs, y, 0.0, t_end, tol, observe);
}

}  // namespace

std::vector<TrajectoryPoint> evolve(const AtomSystem& atom, const DriveConfig& drive,
                                    const DensityMatrix& rho0, double t_end,
                                    const EvolveOptions& opts) {
  std::vector<TrajectoryPoint> traj;
  double next_sample = 0.0;
  SuperVector last;
  double last_t = 0.0;
  run_master_equation(atom, drive, rho0, t_end, opts, [&](double t, const SuperVector& v) {
    last = v;
    last_t = t;
    if (opts.sample_dt <= 0 || t >= next_sample) {
      traj.push_back({t, DensityMatrix::from_vector(v)});
      if (opts.sample_dt > 0)
        next_sample = (std::floor(t / opts.sample_dt) + 1.0) * opts.sample_dt;
    }
    return true;
  });
  if (traj.back().t != last_t) traj.push_back({last_t, DensityMatrix::from_vector(last)});
  return traj;
}

DensityMatrix evolve_final(const AtomSystem& atom, const DriveConfig& drive,
                           const DensityMatrix& rho0, double t_end, const EvolveOptions& opts) {
  SuperVector last;
  run_master_equation(atom, drive, rho0, t_end, opts, [&](double, const SuperVector& v) {
    last = v;
    return true;
  });
  return DensityMatrix::from_vector(last);
}

double slowest_relaxation_rate(const AtomSystem& atom, const DriveConfig& drive) {
  const LiouvillianOperator op = build_liouvillian(atom, drive, drive.phi_s());
  Eigen::ComplexEigenSolver<SuperMatrix> es(op.superop, false);
  // The homogeneous part has one eigenvalue at -gamma_t (trace mode) when
  // gamma_t > 0, or exactly 0 otherwise; skip the zero mode.
  const double zero_tol = 1e-9 * op.superop.norm();
  double slowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < 16; ++i) {
    const double rate = -es.eigenvalues()[i].real();
    if (rate > zero_tol) slowest = std::min(slowest, rate);
  }
  return slowest;
}

double settling_time(const AtomSystem& atom, const DriveConfig& drive, double epsilon,
                     double horizon, const EvolveOptions& opts) {
  if (!(epsilon > 0 && epsilon <= 1))
    throw DomainError("epsilon", "must lie in (0, 1]");
  const DensityMatrix rho_ss = steady_state(atom, drive, drive.phi_s());
  const DensityMatrix rho0 = DensityMatrix::ground_state();
  const double d0 = rho0.frobenius_distance(rho_ss);
  if (epsilon == 1.0 || d0 == 0.0) return 0.0;

  double found = -1.0;
  run_master_equation(atom, drive, rho0, horizon, opts, [&](double t, const SuperVector& v) {
    if (DensityMatrix::from_vector(v).frobenius_distance(rho_ss) < epsilon * d0) {
      found = t;
      return false;
    }
    return true;
  });
  if (found < 0) throw TimeoutError("settling time exceeds horizon", horizon);
  return found;
}

}  // namespace rydhet
