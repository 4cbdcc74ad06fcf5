#include <cmath>
#include <sstream>

#include "kp5/evolution.hpp"

namespace kp5 {
namespace {

double spacetime_distance(const std::vector<Field>& a, const std::vector<Field>& b, double h) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double d = l2_distance(a[m], b[m]);
    s += d * d;
  }
  return std::sqrt(h * s);
}

}  // namespace

PicardResult duhamel_picard(const Field& phi, const SolverConfig& cfg, const DispersionParams& params,
                            const PicardOptions& options) {
  cfg.validate();
  require_zero_mass(phi, "duhamel_picard");

  const SpectralGrid& grid = phi.grid();
  const int steps = cfg.step_count();
  const int sub = cfg.quadrature_nodes - 1;
  const int nodes = steps * sub + 1;
  const double h = cfg.dt / sub;

  const MultiplierTable step = tabulate(grid, symbols::propagator(h, params));
  std::vector<double> t(nodes);
  for (int m = 0; m < nodes; ++m) t[m] = m * h;

  // Free part ψ(t)S(t)φ on every quadrature node.
  std::vector<Field> base;
  base.reserve(nodes);
  {
    Field w = zero_mode_project(phi);
    for (int m = 0; m < nodes; ++m) {
      if (m > 0) w = apply_table(w, step, params.zero_mode);
      base.push_back(cutoff_psi(t[m]) * w);
    }
  }

  std::vector<Field> current = base;
  PicardResult result;
  for (int iter = 0; iter < cfg.picard_max_iters; ++iter) {
    std::vector<Field> next;
    next.reserve(nodes);
    // Duhamel integral I(t_m) = ∫_0^{t_m} S(t_m − t')g(t')dt' with g = ∂_x(u²),
    // advanced node to node with the exact propagator and the trapezoid rule.
    Field integral(grid);
    Field g_prev = 2.0 * nonlinear_rhs(current[0]);
    next.push_back(base[0]);
    for (int m = 1; m < nodes; ++m) {
      Field g = 2.0 * nonlinear_rhs(current[m]);
      integral += (0.5 * h) * g_prev;
      integral = apply_table(integral, step, params.zero_mode);
      integral += (0.5 * h) * g;
      next.push_back(base[m] - (0.5 * cutoff_psi_T(t[m], cfg.cutoff_T)) * integral);
      g_prev = std::move(g);
    }

    const double d = spacetime_distance(next, current, h);
    result.distances.push_back(d);
    if (options.on_distance) options.on_distance(iter, d);
    current = std::move(next);

    if (!std::isfinite(d)) {
      throw ContractionFailure(
          "Picard iterates became non-finite; reduce cutoff_T or the size of the data "
          "(the admissible T shrinks with the norm of phi)",
          result.distances);
    }
    if (d < cfg.picard_tol) {
      result.converged = true;
      break;
    }
    const auto& ds = result.distances;
    const std::size_t n = ds.size();
    if (n >= 3 && ds[n - 1] > ds[n - 2] && ds[n - 2] > ds[n - 3]) {
      std::ostringstream msg;
      msg << "Picard iteration is not contracting (d grew twice in a row, last d = " << d
          << "); reduce cutoff_T or the size of the data (the admissible T shrinks with the norm of phi)";
      throw ContractionFailure(msg.str(), result.distances);
    }
  }

  for (int n = 0; n <= steps; ++n) {
    const Field& state = current[static_cast<std::size_t>(n) * sub];
    result.trajectory.times.push_back(n * cfg.dt);
    result.trajectory.states.push_back(state);
    result.trajectory.diagnostics.push_back(diagnose(n * cfg.dt, state, params, options.monitors));
  }
  return result;
}

}  // namespace kp5
