#include <algorithm>
#include <cmath>
#include <numbers>
#include <iostream>
#include <sstream>

#include "kp5/evolution.hpp"

namespace kp5 {
namespace {

bool all_finite(const Field& f) {
  for (const auto& c : f.spectral()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double max_abs_xi(const SpectralGrid& g) {
  // Largest retained |ξ| after the 2/3 rule.
  return 2.0 * std::numbers::pi * std::floor(g.nx() / 3.0) / g.lx();
}

}  // namespace

Field nonlinear_rhs(const Field& f) {
  const SpectralGrid& g = f.grid();
  std::vector<double> u = dealias(f).physical();
  for (auto& v : u) v *= v;
  Field sq = Field::from_physical(g, u);
  Field out = dealias(apply_symbol(sq, symbols::dx()));
  out *= 0.5;
  return zero_mode_project(out);
}

SplitStepper::SplitStepper(const SpectralGrid& grid, double dt, const DispersionParams& params, bool nonlinear)
    : dt_(dt), nonlinear_(nonlinear), policy_(params.zero_mode),
      half_(tabulate(grid, symbols::propagator(0.5 * dt, params))) {}

Field SplitStepper::step(const Field& f) const {
  Field v = apply_table(f, half_, policy_);
  if (nonlinear_) {
    Field mid = v - (0.5 * dt_) * nonlinear_rhs(v);
    v -= dt_ * nonlinear_rhs(mid);
  }
  v = apply_table(v, half_);
  if (!all_finite(v)) throw BlowUpError("non-finite state produced by split step", 0.0, Trajectory{});
  return v;
}

Field step_splitstep(const Field& f, double dt, const DispersionParams& params, bool nonlinear) {
  return SplitStepper(f.grid(), dt, params, nonlinear).step(f);
}

DiagnosticRecord diagnose(double t, const Field& f, const DispersionParams& params,
                          const std::vector<NormSpec>& monitors) {
  DiagnosticRecord rec;
  rec.t = t;
  rec.mass = mass(f);
  rec.energy = energy_functional(f, params);
  rec.norms.reserve(monitors.size());
  for (const auto& m : monitors) rec.norms.push_back(sobolev_aniso_norm(f, m));
  return rec;
}

Trajectory evolve(const Field& f0, const SolverConfig& cfg, const DispersionParams& params,
                  const EvolveOptions& options) {
  if (cfg.dt <= 0.0 || cfg.t_final <= 0.0) throw SpecError("dt and t_final must be positive");
  const int steps = cfg.step_count();
  const int stride = std::max(1, options.state_stride);
  require_zero_mass(f0, "evolve");

  Trajectory traj;
  const SplitStepper stepper(f0.grid(), cfg.dt, params, options.nonlinear);
  const double xi_max = max_abs_xi(f0.grid());
  bool warned = false;

  auto record = [&](double t, const Field& f) {
    traj.diagnostics.push_back(diagnose(t, f, params, options.monitors));
    if (options.on_record) options.on_record(traj.diagnostics.back());
  };
  auto store = [&](double t, const Field& f) {
    traj.times.push_back(t);
    traj.states.push_back(f);
    if (options.on_state) options.on_state(t, f);
  };
  auto check_step_size = [&](const Field& f) {
    if (warned || !options.nonlinear || options.quiet) return;
    double umax = 0.0;
    for (double v : f.physical()) umax = std::max(umax, std::abs(v));
    if (cfg.dt * umax * xi_max > 1.0) {
      std::ostringstream msg;
      msg << "warning: dt = " << cfg.dt << " exceeds the explicit-substep heuristic 1/(max|u| max|xi|) = "
          << 1.0 / (umax * xi_max);
      if (options.warn) {
        options.warn(msg.str());
      } else {
        std::cerr << msg.str() << '\n';
      }
      warned = true;
    }
  };

  Field u = zero_mode_project(f0);
  record(0.0, u);
  store(0.0, u);
  check_step_size(u);
  for (int n = 1; n <= steps; ++n) {
    const double t = n * cfg.dt;
    try {
      u = stepper.step(u);
    } catch (const BlowUpError&) {
      const double reached = (n - 1) * cfg.dt;
      if (traj.times.back() != reached) {
        traj.times.push_back(reached);
        traj.states.push_back(u);
      }
      std::ostringstream msg;
      msg << "blow-up: non-finite samples after t = " << reached;
      throw BlowUpError(msg.str(), reached, std::move(traj));
    }
    record(t, u);
    if (n % stride == 0 || n == steps) store(t, u);
    if (n % 64 == 0) check_step_size(u);
  }
  return traj;
}

}  // namespace kp5
