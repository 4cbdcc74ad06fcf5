#include "kp5/dispersion.hpp"

#include "kp5/errors.hpp"

namespace kp5 {

double dispersion_omega(double xi, double mu, const DispersionParams& params) {
  if (xi == 0.0) {
    if (mu == 0.0 && params.zero_mode == ZeroModePolicy::ProjectOut) return 0.0;
    throw SingularSymbolError("dispersion symbol is singular on xi = 0");
  }
  const double xi2 = xi * xi;
  return params.sign() * xi2 * xi2 * xi - params.alpha * xi2 * xi + mu * mu / xi;
}

std::pair<double, double> gradient_omega(double xi, double mu, const DispersionParams& params) {
  if (xi == 0.0) throw SingularSymbolError("gradient of the dispersion symbol is singular on xi = 0");
  const double xi2 = xi * xi;
  const double d_xi = 5.0 * params.sign() * xi2 * xi2 - 3.0 * params.alpha * xi2 - mu * mu / xi2;
  const double d_mu = 2.0 * mu / xi;
  return {d_xi, d_mu};
}

}  // namespace kp5
