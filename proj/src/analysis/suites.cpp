#include "kp5/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "kp5/convolution.hpp"
#include "kp5/errors.hpp"
#include "kp5/evolution.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/resonance.hpp"
#include "kp5/sampling.hpp"
#include "kp5/spacetime.hpp"

namespace kp5 {
namespace {

SuiteCheck check_le(std::string name, double value, double threshold) {
  return {std::move(name), value <= threshold, value, threshold};
}

SuiteCheck check_ge(std::string name, double value, double threshold) {
  return {std::move(name), value >= threshold, value, threshold};
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"resonance", "kp2bound", "strichartz", "convolution", "dyadic",
                                              "unitarity"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

SuiteReport run_resonance_suite(std::uint64_t seed, std::size_t samples) {
  SuiteReport rep;
  rep.suite = "resonance";
  rep.columns = {"sign", "alpha", "xi1", "xi2", "mu1", "mu2", "residual"};
  const std::vector<KpSign> signs{KpSign::KP1, KpSign::KP2};
  const std::vector<double> alphas{-1.0, 0.0, 1.0};
  const std::size_t cases = signs.size() * alphas.size();
  rep.rows.assign(cases * samples, {});
  std::vector<char> symmetric(cases * samples, 1);

  parallel_for(cases * samples, [&](std::size_t n) {
    const std::size_t c = n / samples;
    const DispersionParams params{signs[c / alphas.size()], alphas[c % alphas.size()], ZeroModePolicy::ProjectOut};
    SampleRng rng(seed, n);
    double xi1 = 0.0;
    double xi2 = 0.0;
    do {
      xi1 = rng.log_uniform_signed();
      xi2 = rng.log_uniform_signed();
    } while (xi1 + xi2 == 0.0);
    const double mu1 = rng.log_uniform_signed();
    const double mu2 = rng.log_uniform_signed();
    const double res = resonance_identity_check(xi1, xi2, mu1, mu2, params);
    symmetric[n] = resonance(xi1, xi2, mu1, mu2, params) == resonance(xi2, xi1, mu2, mu1, params);
    rep.rows[n] = {params.sign(), params.alpha, xi1, xi2, mu1, mu2, res};
  });

  double worst = 0.0;
  for (const auto& r : rep.rows) worst = std::max(worst, r[6]);
  const double asym = static_cast<double>(std::count(symmetric.begin(), symmetric.end(), 0));
  rep.summary = {{"samples", static_cast<double>(rep.rows.size())}, {"max_residual", worst}, {"asymmetric", asym}};
  rep.checks.push_back(check_le("identity residual", worst, 1e-9));
  rep.checks.push_back(check_le("exact exchange symmetry violations", asym, 0.0));
  return rep;
}

SuiteReport run_kp2bound_suite(std::uint64_t seed, std::size_t samples) {
  SuiteReport rep;
  rep.suite = "kp2bound";
  rep.columns = {"xi1", "xi2", "mu1", "mu2", "ratio"};
  rep.rows.assign(samples, {});
  parallel_for(samples, [&](std::size_t n) {
    SampleRng rng(seed, n);
    double xi1 = 0.0;
    double xi2 = 0.0;
    do {
      xi1 = rng.log_uniform_signed();
      xi2 = rng.log_uniform_signed();
    } while (std::abs(xi1) < 1e-3 || std::abs(xi2) < 1e-3 || std::abs(xi1 + xi2) < 1e-3);
    const double mu1 = rng.log_uniform_signed();
    const double mu2 = rng.log_uniform_signed();
    rep.rows[n] = {xi1, xi2, mu1, mu2, kp2_lower_bound_ratio(xi1, xi2, mu1, mu2, 0.0)};
  });
  double random_min = kInf;
  for (const auto& r : rep.rows) random_min = std::min(random_min, r[4]);

  // Parallel group lines μ_i = c·ξ_i remove the transverse term entirely.
  double parallel_min = kInf;
  for (int a = -200; a <= 200; ++a) {
    const double ratio = a / 40.0;  // ξ₂/ξ₁ in [-5, 5]
    if (ratio == 0.0 || ratio == -1.0) continue;
    for (double c : {-3.0, 0.5, 7.0}) {
      const double xi1 = 1.7;
      const double xi2 = ratio * xi1;
      const double v = kp2_lower_bound_ratio(xi1, xi2, c * xi1, c * xi2, 0.0);
      parallel_min = std::min(parallel_min, v);
      rep.rows.push_back({xi1, xi2, c * xi1, c * xi2, v});
    }
  }
  rep.summary = {{"samples", static_cast<double>(samples)}, {"min_ratio_random", random_min},
                 {"min_ratio_parallel", parallel_min}};
  rep.checks.push_back(check_ge("random samples min ratio", random_min, 1.0));
  rep.checks.push_back(check_ge("parallel-line family min ratio", parallel_min, 1.0));
  return rep;
}

SuiteReport run_strichartz_suite(std::uint64_t seed, std::size_t samples) {
  SuiteReport rep;
  rep.suite = "strichartz";
  rep.columns = {"j", "r", "sample", "ratio"};
  const SpectralGrid grid = make_grid(64, 64, 8.0 * std::numbers::pi, 8.0 * std::numbers::pi);
  constexpr int kNt = 64;
  constexpr double kWindow = 2.0;
  constexpr double kT = 0.9;
  constexpr double kR = 4.0;
  constexpr int kShells = 9;
  const DispersionParams params{KpSign::KP1, 0.0, ZeroModePolicy::ProjectOut};

  std::vector<double> ratios(kShells * samples);
  parallel_for(ratios.size(), [&](std::size_t n) {
    const int j = static_cast<int>(n / samples);
    SampleRng rng(seed, n);
    const SpaceTimeField u = random_shell_spacetime(grid, kNt, kWindow, j, params, rng);
    ratios[n] = strichartz_ratio(u, j, kR, kT, params);
  });

  std::vector<double> js;
  std::vector<double> log_max;
  double lo = kInf;
  double hi = 0.0;
  double sum = 0.0;
  bool finite = true;
  for (int j = 0; j < kShells; ++j) {
    double shell_max = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const double v = ratios[j * samples + s];
      rep.rows.push_back({static_cast<double>(j), kR, static_cast<double>(s), v});
      finite = finite && std::isfinite(v) && v > 0.0;
      shell_max = std::max(shell_max, v);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    js.push_back(j);
    log_max.push_back(std::log2(shell_max));
    rep.summary.emplace_back("max_ratio_j" + std::to_string(j), shell_max);
  }
  const double slope = regression_slope(js, log_max);
  rep.summary.insert(rep.summary.begin(), {{"min", lo}, {"max", hi}, {"mean", sum / ratios.size()}, {"slope", slope}});
  rep.checks.push_back({"all ratios finite and positive", finite, finite ? 1.0 : 0.0, 1.0});
  rep.checks.push_back(check_le("slope of max log2 ratio vs j", slope, 0.1));
  return rep;
}

SuiteReport run_convolution_suite(std::size_t a_points) {
  SuiteReport rep;
  rep.suite = "convolution";
  rep.columns = {"gamma", "a", "lhs_product", "ratio_product", "lhs_singular", "ratio_singular"};
  const std::vector<double> gammas{1.1, 1.5, 2.0, 3.0};
  const std::size_t n = std::max<std::size_t>(a_points, 2);
  std::vector<double> as(n);
  for (std::size_t i = 0; i < n; ++i) as[i] = -100.0 + 200.0 * static_cast<double>(i) / (n - 1);

  std::vector<ConvolutionBound> results(gammas.size() * n);
  parallel_for(results.size(), [&](std::size_t k) { results[k] = convolution_bound_check(gammas[k / n], as[k % n]); });

  for (std::size_t g = 0; g < gammas.size(); ++g) {
    double c1 = 0.0;
    double c2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = results[g * n + i];
      rep.rows.push_back({gammas[g], as[i], r.lhs_product, r.ratio_product, r.lhs_singular, r.ratio_singular});
      c1 = std::max(c1, r.ratio_product);
      c2 = std::max(c2, r.ratio_singular);
    }
    const std::string tag = "gamma=" + std::to_string(gammas[g]).substr(0, 3);
    rep.summary.emplace_back("C_product " + tag, c1);
    rep.summary.emplace_back("C_singular " + tag, c2);
    rep.checks.push_back({"product ratio bounded, " + tag, std::isfinite(c1) && c1 > 0.0, c1, kInf});
    rep.checks.push_back({"singular ratio bounded, " + tag, std::isfinite(c2) && c2 > 0.0, c2, kInf});
  }

  // Decay of the product integral as |a| grows, γ = 2.
  const std::size_t g2 = 2;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a0 = as[i];
    const double a1 = as[i + 1];
    const double l0 = results[g2 * n + i].lhs_product;
    const double l1 = results[g2 * n + i + 1].lhs_product;
    if (a1 <= 0.0 && l1 < l0) monotone = false;
    if (a0 >= 0.0 && l1 > l0) monotone = false;
  }
  rep.checks.push_back({"product integral monotone in |a| (gamma=2)", monotone, monotone ? 1.0 : 0.0, 1.0});

  const double spot = convolution_bound_check(2.0, 0.0).lhs_product;
  const double spot_err = std::abs(spot - std::numbers::pi / 2.0);
  rep.summary.emplace_back("spot_value", spot);
  rep.checks.push_back(check_le("int (1+t^2)^-2 dt = pi/2", spot_err, 1e-8));
  return rep;
}

SuiteReport run_dyadic_suite(std::size_t x_points) {
  SuiteReport rep;
  rep.suite = "dyadic";
  rep.columns = {"J", "max_defect"};
  constexpr int kMaxJ = 40;
  // x = ±10^e with e uniform in [-3, 13], plus the origin: covers every shell up to 2^41.
  std::vector<double> xs(x_points);
  for (std::size_t i = 0; i < x_points; ++i) {
    const double e = -3.0 + 16.0 * static_cast<double>(i / 2) / std::max<std::size_t>(1, x_points / 2);
    xs[i] = (i % 2 == 0 ? 1.0 : -1.0) * std::pow(10.0, e);
  }
  if (!xs.empty()) xs[0] = 0.0;

  std::vector<double> defect(kMaxJ + 1, 0.0);
  const std::size_t chunks = 64;
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(kMaxJ + 1, 0.0));
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = c * x_points / chunks;
    const std::size_t hi = (c + 1) * x_points / chunks;
    for (std::size_t i = lo; i < hi; ++i) {
      double sum = 0.0;
      for (int J = 0; J <= kMaxJ; ++J) {
        sum += dyadic_eta(J, xs[i]);
        const double target = cutoff_psi(std::ldexp(xs[i], -J));
        partial[c][J] = std::max(partial[c][J], std::abs(sum - target));
      }
    }
  });
  double worst = 0.0;
  for (int J = 0; J <= kMaxJ; ++J) {
    for (const auto& p : partial) defect[J] = std::max(defect[J], p[J]);
    rep.rows.push_back({static_cast<double>(J), defect[J]});
    worst = std::max(worst, defect[J]);
  }
  rep.summary = {{"x_points", static_cast<double>(x_points)}, {"max_defect", worst}};
  rep.checks.push_back(check_le("telescoping defect", worst, 1e-15));
  return rep;
}

SuiteReport run_unitarity_suite(std::uint64_t seed, std::size_t fields) {
  SuiteReport rep;
  rep.suite = "unitarity";
  rep.columns = {"sample", "s1", "s2", "norm_defect", "group_defect"};
  const SpectralGrid grid = make_grid(64, 64, 32.0 * std::numbers::pi, 32.0 * std::numbers::pi);
  const DispersionParams params{KpSign::KP1, 1.0, ZeroModePolicy::ProjectOut};

  std::vector<std::vector<std::vector<double>>> per(fields);
  parallel_for(fields, [&](std::size_t n) {
    SampleRng rng(seed, n);
    const Field f = random_real_field(grid, rng);
    const double s = rng.uniform(-1.0, 1.0);
    const double t = rng.uniform(-1.0, 1.0);
    const Field st = linear_propagate(f, t, params);
    const Field composed = linear_propagate(linear_propagate(f, s, params), t, params);
    const Field direct = linear_propagate(f, s + t, params);
    const double group = l2_distance(composed, direct) / f.l2_norm();
    for (int s1 = 0; s1 <= 2; ++s1) {
      for (int s2 = 0; s2 <= 2; ++s2) {
        const NormSpec spec{double(s1), double(s2), 0.0};
        const double before = sobolev_aniso_norm(f, spec);
        const double after = sobolev_aniso_norm(st, spec);
        per[n].push_back({double(n), double(s1), double(s2), std::abs(after - before) / before, group});
      }
    }
  });
  double worst_norm = 0.0;
  double worst_group = 0.0;
  for (const auto& block : per) {
    for (const auto& r : block) {
      rep.rows.push_back(r);
      worst_norm = std::max(worst_norm, r[3]);
      worst_group = std::max(worst_group, r[4]);
    }
  }
  rep.summary = {{"fields", static_cast<double>(fields)}, {"max_norm_defect", worst_norm},
                 {"max_group_defect", worst_group}};
  rep.checks.push_back(check_le("H^{s1,s2} norm preservation", worst_norm, 1e-11));
  rep.checks.push_back(check_le("group law defect", worst_group, 1e-11));
  return rep;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::size_t samples) {
  const auto pick = [samples](std::size_t fallback) { return samples == 0 ? fallback : samples; };
  if (name == "resonance") return run_resonance_suite(seed, pick(10000));
  if (name == "kp2bound") return run_kp2bound_suite(seed, pick(10000));
  if (name == "strichartz") return run_strichartz_suite(seed, pick(100));
  if (name == "convolution") return run_convolution_suite(pick(201));
  if (name == "dyadic") return run_dyadic_suite(pick(1000000));
  if (name == "unitarity") return run_unitarity_suite(seed, pick(100));
  throw SpecError("unknown verification suite '" + std::string(name) + "'");
}

}  // namespace kp5
