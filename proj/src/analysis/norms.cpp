#include "kp5/norms.hpp"

#include <cmath>
#include <string>

#include "kp5/errors.hpp"

namespace kp5 {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double sobolev_aniso_norm(const Field& f, const NormSpec& spec) {
  if (spec.s1 < 0.0 || spec.s2 < 0.0) throw SpecError("Sobolev indices must be nonnegative");
  const SpectralGrid& g = f.grid();
  double s = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    const double wy = spec.s2 == 0.0 ? 1.0 : std::pow(bracket(g.mu(j)), spec.s2);
    for (int i = 0; i < g.nx(); ++i) {
      const double wx = spec.s1 == 0.0 ? 1.0 : std::pow(bracket(g.xi(i)), spec.s1);
      s += wx * wx * wy * wy * std::norm(f.at(i, j));
    }
  }
  return std::sqrt(s);
}

void require_zero_mass(const Field& f, const char* what) {
  const double content = zero_line_content(f);
  if (content > 1e-12 * f.l2_norm()) {
    throw ZeroMassError(std::string(what) + ": field has content " + std::to_string(content) +
                        " on the xi = 0 line (zero x-mean required)");
  }
}

double tilde_norm(const Field& f, double s, double k) {
  require_zero_mass(f, "tilde_norm");
  const SpectralGrid& g = f.grid();
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    const double mu = std::abs(g.mu(j));
    for (int i = 1; i < g.nx(); ++i) {
      const double xi = std::abs(g.xi(i));
      const double w = 1.0 + std::pow(xi, s) + std::pow(mu, k) / xi;
      sum += w * w * std::norm(f.at(i, j));
    }
  }
  return std::sqrt(sum);
}

double mass(const Field& f) {
  const double n = f.l2_norm();
  return f.grid().cell_area() * n * n;
}

double momentum(const Field& f) {
  // c(0,0) = N^{-1/2} Σ u, so ∫u = dA·sqrt(N)·c(0,0).
  const SpectralGrid& g = f.grid();
  return g.cell_area() * std::sqrt(static_cast<double>(g.size())) * f.at(0, 0).real();
}

EnergyTerms energy_terms(const Field& f) {
  require_zero_mass(f, "energy");
  const SpectralGrid& g = f.grid();
  EnergyTerms t;
  for (int j = 0; j < g.ny(); ++j) {
    const double mu = g.mu(j);
    for (int i = 1; i < g.nx(); ++i) {
      const double xi = g.xi(i);
      const double a = std::norm(f.at(i, j));
      t.dxx_sq += xi * xi * xi * xi * a;
      t.dx_sq += xi * xi * a;
      t.transverse_sq += (mu / xi) * (mu / xi) * a;
    }
  }
  const double dA = g.cell_area();
  t.dxx_sq *= dA;
  t.dx_sq *= dA;
  t.transverse_sq *= dA;
  double cubic = 0.0;
  for (double u : f.physical()) cubic += u * u * u;
  t.cubic = dA * cubic;
  return t;
}

double energy_functional(const Field& f, const DispersionParams& params) {
  const EnergyTerms t = energy_terms(f);
  return 0.5 * params.sign() * t.dxx_sq - 0.5 * params.alpha * t.dx_sq + 0.5 * t.transverse_sq +
         t.cubic / 6.0;
}

double energy_functional(const Field& f, double alpha) {
  return energy_functional(f, DispersionParams{KpSign::KP1, alpha, ZeroModePolicy::ProjectOut});
}

double printed_energy_functional(const Field& f, double alpha) {
  const EnergyTerms t = energy_terms(f);
  return 0.5 * t.dxx_sq + 0.5 * alpha * t.dx_sq + 0.5 * t.transverse_sq - t.cubic / 6.0;
}

}  // namespace kp5
