#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kp5::fft {

/// In-place unitary transforms over a row-major array with the given
/// extents (slowest dimension first):
///   forward: c_k = N^{-1/2} Σ_n u_n e^{-2πi k·n/N}
///   inverse: u_n = N^{-1/2} Σ_k c_k e^{+2πi k·n/N}
///
/// Plans are built once per shape under a mutex and executed through the
/// new-array interface, so distinct buffers may be transformed concurrently.
void forward(std::span<std::complex<double>> data, const std::vector<int>& extents);
void inverse(std::span<std::complex<double>> data, const std::vector<int>& extents);

}  // namespace kp5::fft
