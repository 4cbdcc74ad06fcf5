#include <cmath>

#include "kp5/evolution.hpp"

namespace kp5 {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw SpecError("dt must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw SpecError("t_final must be positive");
  if (dt > t_final * (1.0 + 1e-12)) throw SpecError("dt must not exceed t_final");
  if (picard_max_iters < 1) throw SpecError("picard_max_iters must be positive");
  if (!(picard_tol > 0.0)) throw SpecError("picard_tol must be positive");
  if (quadrature_nodes < 2) throw SpecError("quadrature_nodes must be >= 2");
  if (!(cutoff_T > 0.0 && cutoff_T < 1.0)) throw SpecError("cutoff_T must lie in (0, 1)");
  step_count();
}

int SolverConfig::step_count() const {
  const double ratio = t_final / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * n) {
    throw SpecError("t_final must be an integer multiple of dt");
  }
  return static_cast<int>(n);
}

Field linear_propagate(const Field& f, double t, const DispersionParams& params) {
  if (t == 0.0 && params.zero_mode == ZeroModePolicy::ProjectOut) return zero_mode_project(f);
  return apply_symbol(f, symbols::propagator(t, params), params.zero_mode);
}

double residual_check(const Trajectory& traj, const DispersionParams& params, bool include_nonlinear) {
  const auto& t = traj.times;
  if (t.size() < 3 || traj.states.size() != t.size()) {
    throw SpecError("residual_check needs at least three states with matching times");
  }
  const double dt = t[1] - t[0];
  for (std::size_t n = 1; n + 1 < t.size(); ++n) {
    if (std::abs((t[n + 1] - t[n]) - dt) > 1e-9 * std::abs(dt)) {
      throw SpecError("residual_check requires equally spaced times");
    }
  }
  const MultiplierTable lin = tabulate(traj.states.front().grid(), symbols::linear_operator(params));
  double worst = 0.0;
  for (std::size_t n = 1; n + 1 < t.size(); ++n) {
    Field r = traj.states[n + 1] - traj.states[n - 1];
    r *= 1.0 / (2.0 * dt);
    r += apply_table(traj.states[n], lin, params.zero_mode);
    if (include_nonlinear) r += nonlinear_rhs(traj.states[n]);
    worst = std::max(worst, r.l2_norm());
  }
  return worst;
}

double cutoff_psi(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const auto bump = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
  const double up = bump(2.0 - a);
  return up / (up + bump(a - 1.0));
}

double cutoff_psi_T(double t, double T) {
  if (!(T > 0.0 && T < 1.0)) throw SpecError("cutoff parameter T must lie in (0, 1)");
  return cutoff_psi(t / T);
}

}  // namespace kp5
