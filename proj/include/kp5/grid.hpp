#pragma once

#include <cstddef>

namespace kp5 {

/// Doubly periodic box [0, lx) x [0, ly) sampled on nx x ny points, together
/// with its discrete wavenumber lattice.
///
/// Storage order everywhere in the library is row-major with y outer and x
/// inner: flat index = j * nx + i.  Spectral index i maps to the signed mode
/// k = i for i < nx/2 and k = i - nx otherwise (standard FFT order), so the
/// signed range is {-nx/2, ..., nx/2 - 1}.
class SpectralGrid {
 public:
  SpectralGrid(int nx, int ny, double lx, double ly);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  /// Physical cell area lx*ly/(nx*ny); the quadrature weight of every sample.
  double cell_area() const { return lx_ * ly_ / (static_cast<double>(nx_) * ny_); }

  double x(int i) const { return i * lx_ / nx_; }
  double y(int j) const { return j * ly_ / ny_; }

  int signed_kx(int i) const { return i < nx_ / 2 ? i : i - nx_; }
  int signed_ky(int j) const { return j < ny_ / 2 ? j : j - ny_; }

  /// ξ for spectral column i; exactly 0 for i = 0.
  double xi(int i) const;
  /// μ for spectral row j; exactly 0 for j = 0.
  double mu(int j) const;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  /// Index of the conjugate partner (-k, -l) mod the lattice.
  std::size_t partner(int i, int j) const {
    return index((nx_ - i) % nx_, (ny_ - j) % ny_);
  }

  bool operator==(const SpectralGrid&) const = default;

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

/// Validating constructor: nx, ny even and >= 4, lx, ly > 0.
SpectralGrid make_grid(int nx, int ny, double lx, double ly);

}  // namespace kp5
