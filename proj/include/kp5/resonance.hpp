#pragma once

#include <string_view>

#include "kp5/dispersion.hpp"

namespace kp5 {

/// Closed form of ω(ξ₁+ξ₂, μ₁+μ₂) − ω(ξ₁, μ₁) − ω(ξ₂, μ₂):
///   R = ξ₁ξ₂/(ξ₁+ξ₂) · [(ξ₁+ξ₂)²(5·sign·(ξ₁²+ξ₁ξ₂+ξ₂²) − 3α) − (μ₁/ξ₁ − μ₂/ξ₂)²].
/// For ξ₁ + ξ₂ = 0 with μ₁ + μ₂ = 0 the ω form is evaluated instead.
/// Throws SingularSymbolError when ξ₁ or ξ₂ is zero, or when ξ₁ + ξ₂ = 0 but
/// μ₁ + μ₂ ≠ 0.
double resonance(double xi1, double xi2, double mu1, double mu2, const DispersionParams& params);

/// |R_closed − R_ω| / max(1, |R_closed|).
double resonance_identity_check(double xi1, double xi2, double mu1, double mu2, const DispersionParams& params);

/// |R| / (max{|ξ₁|,|ξ₂|,|ξ₁+ξ₂|}⁴ · min{...}) with the KP-II sign.
double kp2_lower_bound_ratio(double xi1, double xi2, double mu1, double mu2, double alpha = 0.0);

enum class InteractionTag { LowLL, LowHH, HighHL, HighHH, Other };

struct InteractionCase {
  InteractionTag tag = InteractionTag::Other;
  double threshold = 10.0;  ///< M₀ = max{10, |α|}
};

InteractionCase classify_interaction(double xi1, double xi2, double alpha);

std::string_view to_string(InteractionTag tag);

}  // namespace kp5
