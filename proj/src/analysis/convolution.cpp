#include "kp5/convolution.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kp5/errors.hpp"
#include "kp5/norms.hpp"

namespace kp5 {
namespace {

constexpr double kAbsTol = 1e-10;
constexpr unsigned kMaxDepth = 15;
constexpr double kSplit = 10.0;

template <typename F>
double integrate(F f, double lo, double hi, double& worst_error) {
  if (lo == hi) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, kMaxDepth, 1e-13, &err, &l1);
  worst_error = std::max(worst_error, err);
  return v;
}

// ∫_r^∞ f by the exp-sinh rule, which copes with slow algebraic decay.
template <typename F>
double integrate_tail(F f, double r, double& worst_error) {
  thread_local boost::math::quadrature::exp_sinh<double> rule;
  double err = 0.0;
  double l1 = 0.0;
  const double v = rule.integrate([&f, r](double u) { return f(r + u); }, 0.0,
                                  std::numeric_limits<double>::infinity(), 1e-13, &err, &l1);
  worst_error = std::max(worst_error, err);
  return v;
}

// ∫_lo^∞ with a finite piece before the tail.
template <typename F>
double integrate_right(F f, double lo, double& worst_error) {
  return integrate(f, lo, lo + kSplit, worst_error) + integrate_tail(f, lo + kSplit, worst_error);
}

}  // namespace

ConvolutionBound convolution_bound_check(double gamma, double a) {
  if (!(gamma > 1.0)) throw SpecError("convolution bounds need gamma > 1; the integrals diverge otherwise");
  if (!std::isfinite(a)) throw SpecError("shift a must be finite");
  ConvolutionBound out;
  double err = 0.0;

  const auto product = [gamma, a](double t) {
    return 1.0 / (std::pow(bracket(t), gamma) * std::pow(bracket(t - a), gamma));
  };
  const double lo = std::min(0.0, a);
  const double hi = std::max(0.0, a);
  const auto mirrored = [&product](double t) { return product(-t); };
  out.lhs_product = integrate_right(mirrored, -lo, err) + integrate(product, lo, hi, err) +
                    integrate_right(product, hi, err);

  // t = a + s² on the right, t = a − s² on the left; dt/|t−a|^{1/2} = 2 ds.
  const auto right = [gamma, a](double s) { return 2.0 / std::pow(bracket(a + s * s), gamma); };
  const auto left = [gamma, a](double s) { return 2.0 / std::pow(bracket(a - s * s), gamma); };
  const double peak = std::sqrt(std::abs(a));  // where a ± s² passes through 0
  if (a < 0.0) {
    out.lhs_singular = integrate(right, 0.0, peak, err) + integrate_right(right, peak, err) +
                       integrate_right(left, 0.0, err);
  } else {
    out.lhs_singular = integrate_right(right, 0.0, err) + integrate(left, 0.0, peak, err) +
                       integrate_right(left, peak, err);
  }

  out.ratio_product = out.lhs_product * std::pow(bracket(a), gamma);
  out.ratio_singular = out.lhs_singular * std::sqrt(bracket(a));
  out.error_estimate = err;
  if (err > kAbsTol) {
    throw Kp5Error("convolution quadrature did not reach the 1e-10 absolute tolerance");
  }
  return out;
}

}  // namespace kp5
