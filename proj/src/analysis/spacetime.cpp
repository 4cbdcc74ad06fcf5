#include "kp5/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/fft.hpp"

namespace kp5 {
namespace {

std::vector<int> extents(const SpaceTimeField& u) { return {u.nt(), u.grid().ny(), u.grid().nx()}; }

// Swap the time-frequency orientation: stored slot m holds the standard FFT
// slot (-m) mod nt. The map is an involution.
void flip_time_frequency(std::vector<cplx>& data, const SpectralGrid& g, int nt) {
  const std::size_t plane = g.size();
  for (int m = 1; m < nt / 2; ++m) {
    const int partner = nt - m;
    std::swap_ranges(data.begin() + static_cast<std::ptrdiff_t>(m * plane),
                     data.begin() + static_cast<std::ptrdiff_t>((m + 1) * plane),
                     data.begin() + static_cast<std::ptrdiff_t>(partner * plane));
  }
}

double zero_line_content(const SpaceTimeField& u) {
  double c = 0.0;
  for (int m = 0; m < u.nt(); ++m) {
    for (int j = 0; j < u.grid().ny(); ++j) c = std::max(c, std::abs(u.at(0, j, m)));
  }
  return c;
}

void require_zero_mass(const SpaceTimeField& u, const char* what) {
  if (zero_line_content(u) > 1e-12 * u.l2_norm()) {
    throw ZeroMassError(std::string(what) + ": space-time field has content on the xi = 0 line");
  }
}

}  // namespace

SpaceTimeField::SpaceTimeField(const SpectralGrid& grid, int nt, double t_window)
    : SpaceTimeField(grid, nt, t_window,
                     std::vector<cplx>(grid.size() * static_cast<std::size_t>(std::max(nt, 0)))) {}

SpaceTimeField::SpaceTimeField(const SpectralGrid& grid, int nt, double t_window, std::vector<cplx> spectral)
    : grid_(grid), nt_(nt), t_window_(t_window), data_(std::move(spectral)) {
  if (nt < 2 || nt % 2 != 0) throw SpecError("nt must be even and >= 2");
  if (!(t_window > 0.0)) throw SpecError("t_window must be positive");
  if (data_.size() != grid.size() * static_cast<std::size_t>(nt)) {
    throw SpecError("space-time data size does not match grid x nt");
  }
}

SpaceTimeField SpaceTimeField::from_samples(const SpectralGrid& grid, int nt, double t_window,
                                            std::span<const cplx> samples) {
  if (samples.size() != grid.size() * static_cast<std::size_t>(nt)) {
    throw SpecError("space-time sample count does not match grid x nt");
  }
  std::vector<cplx> data(samples.begin(), samples.end());
  fft::forward(data, {nt, grid.ny(), grid.nx()});
  flip_time_frequency(data, grid, nt);
  return SpaceTimeField(grid, nt, t_window, std::move(data));
}

SpaceTimeField SpaceTimeField::sample(const SpectralGrid& grid, int nt, double t_window,
                                      const std::function<Field(double)>& slice) {
  std::vector<cplx> samples;
  samples.reserve(grid.size() * static_cast<std::size_t>(nt));
  const double dt = t_window / nt;
  for (int m = 0; m < nt; ++m) {
    const int ms = m < nt / 2 ? m : m - nt;
    const auto z = slice(ms * dt).physical_complex();
    samples.insert(samples.end(), z.begin(), z.end());
  }
  return from_samples(grid, nt, t_window, samples);
}

double SpaceTimeField::tau(int m) const {
  const int ms = signed_m(m);
  return ms == 0 ? 0.0 : 2.0 * std::numbers::pi * ms / t_window_;
}

std::vector<cplx> SpaceTimeField::samples() const {
  std::vector<cplx> out(data_);
  flip_time_frequency(out, grid_, nt_);
  fft::inverse(out, extents(*this));
  return out;
}

double SpaceTimeField::l2_norm() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

bool SpaceTimeField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& c) { return c == cplx{}; });
}

double bourgain_norm(const SpaceTimeField& u, const NormSpec& spec, const DispersionParams& params) {
  if (spec.s1 < 0.0 || spec.s2 < 0.0) throw SpecError("Sobolev indices must be nonnegative");
  require_zero_mass(u, "bourgain_norm");
  const SpectralGrid& g = u.grid();
  double sum = 0.0;
  for (int m = 0; m < u.nt(); ++m) {
    const double tau = u.tau(m);
    for (int j = 0; j < g.ny(); ++j) {
      const double mu = g.mu(j);
      const double wy = std::pow(bracket(mu), spec.s2);
      for (int i = 1; i < g.nx(); ++i) {
        const double xi = g.xi(i);
        const double a = std::norm(u.at(i, j, m));
        if (a == 0.0) continue;
        const double w = std::pow(bracket(tau - dispersion_omega(xi, mu, params)), spec.b) *
                         std::pow(bracket(xi), spec.s1) * wy;
        sum += w * w * a;
      }
    }
  }
  return std::sqrt(sum);
}

double dyadic_eta(int j, double x) {
  if (j < 0) throw SpecError("dyadic index must be nonnegative");
  if (j == 0) return cutoff_psi(x);
  return cutoff_psi(std::ldexp(x, -j)) - cutoff_psi(std::ldexp(x, 1 - j));
}

SpaceTimeField modulation_project(const SpaceTimeField& u, int j, const DispersionParams& params,
                                  ProjectionVariant variant) {
  require_zero_mass(u, "modulation_project");
  const SpectralGrid& g = u.grid();
  std::vector<cplx> out(u.size());
  for (int m = 0; m < u.nt(); ++m) {
    const double tau = u.tau(m);
    for (int jj = 0; jj < g.ny(); ++jj) {
      const double mu = g.mu(jj);
      for (int i = 1; i < g.nx(); ++i) {
        const cplx c = u.at(i, jj, m);
        if (c == cplx{}) continue;
        const double eta = dyadic_eta(j, tau - dispersion_omega(g.xi(i), mu, params));
        out[u.index(i, jj, m)] = variant == ProjectionVariant::Modulus ? cplx(eta * std::abs(c), 0.0) : eta * c;
      }
    }
  }
  return SpaceTimeField(g, u.nt(), u.t_window(), std::move(out));
}

double strichartz_ratio(const SpaceTimeField& u, int j, double r, double T, const DispersionParams& params,
                        ProjectionVariant variant) {
  if (!(r >= 2.0) || !std::isfinite(r)) throw SpecError("Strichartz exponent r must lie in [2, inf)");
  if (!(T > 0.0 && T < 1.0)) throw SpecError("Strichartz time T must lie in (0, 1)");
  if (T > 0.5 * u.t_window()) throw SpecError("Strichartz time T exceeds half the sampled window");

  SpaceTimeField fj = modulation_project(u, j, params, variant);
  if (fj.is_zero()) throw UndefinedRatioError("modulation projection is zero; ratio undefined");

  const SpectralGrid& g = u.grid();
  const double denom_l2 = fj.l2_norm() * std::sqrt(g.cell_area() * fj.dt());

  const double p = 0.5 - 1.0 / r;
  SpaceTimeField weighted = fj;
  for (int m = 0; m < fj.nt(); ++m) {
    for (int jj = 0; jj < g.ny(); ++jj) {
      for (int i = 0; i < g.nx(); ++i) {
        const double xi = std::abs(g.xi(i));
        weighted.at(i, jj, m) *= (p == 0.0) ? 1.0 : (xi == 0.0 ? 0.0 : std::pow(xi, p));
      }
    }
  }
  const std::vector<cplx> s = weighted.samples();
  const std::size_t plane = g.size();
  double numer = 0.0;
  const bool sup_in_time = (r == 2.0);
  const double q = sup_in_time ? 0.0 : 2.0 * r / (r - 2.0);
  for (int m = 0; m < fj.nt(); ++m) {
    if (std::abs(fj.time(m)) > T) continue;
    double space = 0.0;
    for (std::size_t n = 0; n < plane; ++n) space += std::pow(std::abs(s[m * plane + n]), r);
    const double lr = std::pow(space * g.cell_area(), 1.0 / r);
    if (sup_in_time) {
      numer = std::max(numer, lr);
    } else {
      numer += fj.dt() * std::pow(lr, q);
    }
  }
  if (!sup_in_time) numer = std::pow(numer, 1.0 / q);
  return numer / (std::pow(2.0, 0.5 * j) * denom_l2);
}

}  // namespace kp5
