#include "kp5/resonance.hpp"

#include <algorithm>
#include <cmath>

#include "kp5/errors.hpp"

namespace kp5 {
namespace {

double omega_form(double xi1, double xi2, double mu1, double mu2, const DispersionParams& params) {
  DispersionParams p = params;
  p.zero_mode = ZeroModePolicy::ProjectOut;
  return dispersion_omega(xi1 + xi2, mu1 + mu2, p) - dispersion_omega(xi1, mu1, p) - dispersion_omega(xi2, mu2, p);
}

}  // namespace

double resonance(double xi1, double xi2, double mu1, double mu2, const DispersionParams& params) {
  if (xi1 == 0.0 || xi2 == 0.0) throw SingularSymbolError("resonance needs nonzero xi1 and xi2");
  const double sum = xi1 + xi2;
  if (sum == 0.0) {
    if (mu1 + mu2 != 0.0) throw SingularSymbolError("resonance is singular at xi1 + xi2 = 0 with mu1 + mu2 != 0");
    return omega_form(xi1, xi2, mu1, mu2, params);
  }
  const double q = (xi1 * xi1 + xi2 * xi2) + xi1 * xi2;
  const double slope = mu1 / xi1 - mu2 / xi2;
  return xi1 * xi2 / sum * (sum * sum * (5.0 * params.sign() * q - 3.0 * params.alpha) - slope * slope);
}

double resonance_identity_check(double xi1, double xi2, double mu1, double mu2, const DispersionParams& params) {
  const double closed = resonance(xi1, xi2, mu1, mu2, params);
  const double direct = omega_form(xi1, xi2, mu1, mu2, params);
  return std::abs(closed - direct) / std::max(1.0, std::abs(closed));
}

double kp2_lower_bound_ratio(double xi1, double xi2, double mu1, double mu2, double alpha) {
  const DispersionParams params{KpSign::KP2, alpha, ZeroModePolicy::ProjectOut};
  const double r = resonance(xi1, xi2, mu1, mu2, params);
  const double a = std::abs(xi1);
  const double b = std::abs(xi2);
  const double c = std::abs(xi1 + xi2);
  const double hi = std::max({a, b, c});
  const double lo = std::min({a, b, c});
  if (lo == 0.0) throw SingularSymbolError("kp2 lower bound undefined at xi1 + xi2 = 0");
  return std::abs(r) / (hi * hi * hi * hi * lo);
}

InteractionCase classify_interaction(double xi1, double xi2, double alpha) {
  InteractionCase out;
  const double m0 = std::max(10.0, std::abs(alpha));
  out.threshold = m0;
  const double sum = std::abs(xi1 + xi2);
  const double lo = std::min(std::abs(xi1), std::abs(xi2));
  const double hi = std::max(std::abs(xi1), std::abs(xi2));
  if (sum <= m0) {
    if (lo >= m0) {
      out.tag = InteractionTag::LowHH;
    } else if (hi <= 1.5 * m0) {
      out.tag = InteractionTag::LowLL;
    }
  } else if (lo > m0) {
    out.tag = InteractionTag::HighHH;
  } else if (hi >= m0) {
    out.tag = InteractionTag::HighHL;
  }
  return out;
}

std::string_view to_string(InteractionTag tag) {
  switch (tag) {
    case InteractionTag::LowLL: return "LowLL";
    case InteractionTag::LowHH: return "LowHH";
    case InteractionTag::HighHL: return "HighHL";
    case InteractionTag::HighHH: return "HighHH";
    case InteractionTag::Other: return "Other";
  }
  return "Other";
}

}  // namespace kp5
