#pragma once

#include "kp5/dispersion.hpp"
#include "kp5/field.hpp"

namespace kp5 {

/// Indices of H^{s1,s2} and, for space-time norms, the modulation exponent b.
struct NormSpec {
  double s1 = 0.0;
  double s2 = 0.0;
  double b = 0.0;
};

/// ⟨x⟩ = (1 + x²)^{1/2}
double bracket(double x);

/// sqrt(Σ |⟨ξ⟩^{s1}⟨μ⟩^{s2} c|²) with unitary coefficients; s1 = s2 = 0 gives
/// the discrete ℓ² norm. Negative indices raise SpecError.
double sobolev_aniso_norm(const Field& f, const NormSpec& spec);

/// sqrt(Σ_{ξ≠0} |(1 + |ξ|^s + |ξ|^{-1}|μ|^k) c|²). Requires zero x-mean.
double tilde_norm(const Field& f, double s, double k);

/// ∫u² dx dy (cell-area quadrature).
double mass(const Field& f);

/// ∫u dx dy.
double momentum(const Field& f);

/// The four integrals making up the energy, each with its natural sign:
/// ∫|∂²_x u|², ∫|∂_x u|², ∫|∂_x^{-1}∂_y u|², ∫u³.
struct EnergyTerms {
  double dxx_sq = 0.0;
  double dx_sq = 0.0;
  double transverse_sq = 0.0;
  double cubic = 0.0;
};

EnergyTerms energy_terms(const Field& f);

/// Hamiltonian conserved by ∂_t u + α∂³_x u ± ∂⁵_x u + ∂_x^{-1}∂²_y u + u∂_x u = 0:
///   ±½∫|∂²_x u|² − (α/2)∫|∂_x u|² + ½∫|∂_x^{-1}∂_y u|² + (1/6)∫u³.
/// The two-argument form is the KP-I case.
double energy_functional(const Field& f, double alpha);
double energy_functional(const Field& f, const DispersionParams& params);

/// ½∫|∂²_x u|² + (α/2)∫|∂_x u|² + ½∫|∂_x^{-1}∂_y u|² − (1/6)∫u³ as commonly
/// printed for KP-I. It differs from the invariant above in the sign of the
/// α and cubic terms and is not conserved by the flow; kept for reporting.
double printed_energy_functional(const Field& f, double alpha);

/// Throws ZeroMassError when the ξ = 0 line carries more than roundoff.
void require_zero_mass(const Field& f, const char* what);

}  // namespace kp5
