#pragma once

#include <utility>

namespace kp5 {

enum class KpSign { KP1, KP2 };

/// How operations with a 1/ξ factor treat the ξ = 0 Fourier line.
enum class ZeroModePolicy {
  ProjectOut,  ///< the line is forced to zero before the symbol is applied
  Error,       ///< nonzero content on the line raises SingularSymbolError
};

struct DispersionParams {
  KpSign kp_sign = KpSign::KP1;
  double alpha = 0.0;  ///< coefficient of ∂_x³
  ZeroModePolicy zero_mode = ZeroModePolicy::ProjectOut;

  /// +1 for KP1, -1 for KP2: the sign of the fifth-order term.
  double sign() const { return kp_sign == KpSign::KP1 ? 1.0 : -1.0; }
};

/// ω(ξ, μ) = sign·ξ⁵ − αξ³ + μ²/ξ.
///
/// Returns 0 at (0, 0) under ProjectOut. Any other ξ = 0 point throws
/// SingularSymbolError, as does (0, 0) under Error.
double dispersion_omega(double xi, double mu, const DispersionParams& params);

/// Analytic gradient (∂ω/∂ξ, ∂ω/∂μ) = (5·sign·ξ⁴ − 3αξ² − μ²/ξ², 2μ/ξ).
std::pair<double, double> gradient_omega(double xi, double mu, const DispersionParams& params);

}  // namespace kp5
