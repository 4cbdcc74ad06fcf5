#pragma once

namespace kp5 {

struct ConvolutionBound {
  /// ∫ dt / (⟨t⟩^γ ⟨t−a⟩^γ)
  double lhs_product = 0.0;
  /// lhs_product / ⟨a⟩^{-γ}
  double ratio_product = 0.0;
  /// ∫ dt / (⟨t⟩^γ |t−a|^{1/2})
  double lhs_singular = 0.0;
  /// lhs_singular / ⟨a⟩^{-1/2}
  double ratio_singular = 0.0;
  /// Largest quadrature error estimate over all pieces.
  double error_estimate = 0.0;
};

/// Adaptive Gauss–Kronrod on the finite pieces between the peaks t = 0 and
/// t = a, exp-sinh on the two tails. The |t−a|^{-1/2} singularity is removed
/// on each side by t = a ± s².
/// Throws SpecError for γ <= 1 (the integrals diverge).
ConvolutionBound convolution_bound_check(double gamma, double a);

}  // namespace kp5
