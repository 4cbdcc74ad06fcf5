#include "kp5/random_fields.hpp"

#include <cmath>

namespace kp5 {
namespace {

// Fill one half of the lattice and mirror it so the result is real.
template <typename Weight>
Field hermitian_fill(const SpectralGrid& g, SampleRng& rng, Weight weight) {
  Field f(g);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 1; i < g.nx(); ++i) {
      if (i == g.nx() / 2 || j == g.ny() / 2) continue;
      const std::size_t p = g.index(i, j);
      const std::size_t q = g.partner(i, j);
      if (q < p) continue;
      const double w = weight(g.signed_kx(i), g.signed_ky(j));
      const double re = rng.normal();
      const double im = rng.normal();
      if (w == 0.0) continue;
      const cplx c = w * cplx(re, im) / std::sqrt(2.0);
      f.spectral_mut()[p] = c;
      f.spectral_mut()[q] = std::conj(c);
    }
  }
  return f;
}

}  // namespace

Field random_real_field(const SpectralGrid& grid, SampleRng& rng) {
  return hermitian_fill(grid, rng, [](int, int) { return 1.0; });
}

Field random_shell_field(const SpectralGrid& grid, int j, SampleRng& rng) {
  return hermitian_fill(grid, rng, [j](int k, int l) { return dyadic_eta(j, std::hypot(k, l)); });
}

SpaceTimeField random_shell_spacetime(const SpectralGrid& grid, int nt, double t_window, int j,
                                      const DispersionParams& params, SampleRng& rng) {
  SpaceTimeField u(grid, nt, t_window);
  for (int m = 0; m < nt; ++m) {
    const double tau = u.tau(m);
    for (int jj = 0; jj < grid.ny(); ++jj) {
      for (int i = 1; i < grid.nx(); ++i) {
        const double eta = dyadic_eta(j, tau - dispersion_omega(grid.xi(i), grid.mu(jj), params));
        const double re = rng.normal();
        const double im = rng.normal();
        if (eta != 0.0) u.at(i, jj, m) = eta * cplx(re, im) / std::sqrt(2.0);
      }
    }
  }
  return u;
}

}  // namespace kp5
