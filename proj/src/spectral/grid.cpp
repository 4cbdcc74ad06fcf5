#include "kp5/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kp5/errors.hpp"

namespace kp5 {

SpectralGrid::SpectralGrid(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 4 || ny < 4 || nx % 2 != 0 || ny % 2 != 0) {
    throw SpecError("grid dimensions must be even and >= 4, got " + std::to_string(nx) + "x" +
                    std::to_string(ny));
  }
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw SpecError("box lengths must be positive and finite");
  }
}

double SpectralGrid::xi(int i) const {
  const int k = signed_kx(i);
  return k == 0 ? 0.0 : 2.0 * std::numbers::pi * k / lx_;
}

double SpectralGrid::mu(int j) const {
  const int l = signed_ky(j);
  return l == 0 ? 0.0 : 2.0 * std::numbers::pi * l / ly_;
}

SpectralGrid make_grid(int nx, int ny, double lx, double ly) { return SpectralGrid(nx, ny, lx, ly); }

}  // namespace kp5
