#pragma once

#include "kp5/dispersion.hpp"
#include "kp5/field.hpp"
#include "kp5/sampling.hpp"
#include "kp5/spacetime.hpp"

namespace kp5 {

/// Real field with independent complex-normal coefficients on every mode off
/// the ξ = 0 and Nyquist lines.
Field random_real_field(const SpectralGrid& grid, SampleRng& rng);

/// Real field whose modes lie in the j-th dyadic shell of the lattice index
/// |(k, l)|, weighted by η_j. Zero x-mean, no Nyquist content.
Field random_shell_field(const SpectralGrid& grid, int j, SampleRng& rng);

/// Space-time field with complex-normal coefficients weighted by
/// η_j(τ − ω(ξ, μ)), so its modulation sits in the j-th dyadic shell.
SpaceTimeField random_shell_spacetime(const SpectralGrid& grid, int nt, double t_window, int j,
                                      const DispersionParams& params, SampleRng& rng);

}  // namespace kp5
