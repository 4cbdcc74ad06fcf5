#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "kp5/convolution.hpp"
#include "kp5/evolution.hpp"
#include "kp5/norms.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/resonance.hpp"
#include "kp5/sampling.hpp"
#include "kp5/spacetime.hpp"
#include "kp5/suites.hpp"

using namespace kp5;
using std::numbers::pi;

namespace {

const DispersionParams kKp1{KpSign::KP1, 0.0, ZeroModePolicy::ProjectOut};
const DispersionParams kKp2{KpSign::KP2, 0.0, ZeroModePolicy::ProjectOut};

double omega(double xi, double mu, const DispersionParams& p) {
  if (xi == 0.0 && mu == 0.0) return 0.0;
  return p.sign() * std::pow(xi, 5) - p.alpha * xi * xi * xi + mu * mu / xi;
}

std::vector<double> cos_samples(const SpectralGrid& g, double amp) {
  std::vector<double> u(g.size());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) u[g.index(i, j)] = amp * std::cos(2 * pi * g.x(i) / g.lx());
  }
  return u;
}

}  // namespace

TEST_CASE("bracket") {
  CHECK(bracket(0) == 1.0);
  CHECK(bracket(1) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(bracket(-3) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
}

TEST_CASE("sobolev_aniso_norm") {
  const SpectralGrid g = make_grid(16, 16, 2 * pi, 4 * pi);
  SampleRng rng(1, 0);
  const Field f = random_real_field(g, rng);
  CHECK(sobolev_aniso_norm(f, {0, 0, 0}) == doctest::Approx(f.l2_norm()).epsilon(1e-12));
  CHECK(sobolev_aniso_norm(Field(g), {1, 2, 0}) == 0.0);
  CHECK_THROWS_AS(sobolev_aniso_norm(f, {-1, 0, 0}), SpecError);
  CHECK_THROWS_AS(sobolev_aniso_norm(f, {0, -0.5, 0}), SpecError);

  Field m(g);
  m.set_mode(3, -2, 0.7);
  const double xi = 3.0;
  const double mu = -1.0;
  for (double s1 : {0.0, 0.5, 2.0}) {
    for (double s2 : {0.0, 1.0, 1.5}) {
      const double want = 0.7 * std::pow(1 + xi * xi, s1 / 2) * std::pow(1 + mu * mu, s2 / 2);
      CHECK(sobolev_aniso_norm(m, {s1, s2, 0}) == doctest::Approx(want).epsilon(1e-13));
    }
  }

  for (std::uint64_t n = 0; n < 20; ++n) {
    SampleRng r(2, n);
    const Field h = random_real_field(g, r);
    double prev = 0.0;
    for (double s = 0; s <= 3; s += 0.5) {
      const double a = sobolev_aniso_norm(h, {s, 0.3, 0});
      const double b = sobolev_aniso_norm(h, {0.3, s, 0});
      CHECK(a >= prev);
      CHECK(b >= sobolev_aniso_norm(h, {0.3, std::max(0.0, s - 0.5), 0}));
      prev = a;
    }
  }
}

TEST_CASE("tilde_norm") {
  const SpectralGrid g = make_grid(8, 8, 2 * pi, 2 * pi);
  Field m(g);
  m.set_mode(1, 0, 1.0);
  CHECK(tilde_norm(m, 2, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tilde_norm(Field(g), 2, 1) == 0.0);
  Field bad(g);
  bad.set_mode(0, 2, 1.0);
  CHECK_THROWS_AS(tilde_norm(bad, 2, 1), ZeroMassError);

  Field two(g);
  two.set_mode(2, 3, 0.5);
  // |ξ| = 2, |μ| = 3: 1 + 2^s + 3^k / 2
  CHECK(tilde_norm(two, 1.5, 2) == doctest::Approx(0.5 * (1 + std::pow(2.0, 1.5) + 9.0 / 2)).epsilon(1e-14));
}

TEST_CASE("mass and momentum") {
  const SpectralGrid g = make_grid(16, 8, 4 * pi, 3.0);
  const Field f = Field::from_physical(g, cos_samples(g, 0.3));
  CHECK(mass(f) == doctest::Approx(0.09 * g.lx() * g.ly() / 2).epsilon(1e-13));
  CHECK(std::abs(momentum(f)) < 1e-14);
  std::vector<double> c(g.size(), 2.0);
  CHECK(momentum(Field::from_physical(g, c)) == doctest::Approx(2.0 * g.lx() * g.ly()).epsilon(1e-13));
}

TEST_CASE("energy functionals on a cosine") {
  const SpectralGrid g = make_grid(16, 16, 4 * pi, 2 * pi);
  const double amp = 0.3;
  const double alpha = 1.7;
  const Field f = Field::from_physical(g, cos_samples(g, amp));
  const double k0 = 2 * pi / g.lx();
  const double area = g.lx() * g.ly();
  // Closed-form integrals of A²cos² weighted by the derivative symbols; ∫cos³ = 0.
  const double dxx = amp * amp * std::pow(k0, 4) * area / 2;
  const double dx = amp * amp * k0 * k0 * area / 2;
  const EnergyTerms e = energy_terms(f);
  CHECK(e.dxx_sq == doctest::Approx(dxx).epsilon(1e-13));
  CHECK(e.dx_sq == doctest::Approx(dx).epsilon(1e-13));
  CHECK(std::abs(e.transverse_sq) < 1e-28);
  CHECK(std::abs(e.cubic) < 1e-14);
  CHECK(energy_functional(f, alpha) == doctest::Approx(0.5 * dxx - 0.5 * alpha * dx).epsilon(1e-13));
  CHECK(printed_energy_functional(f, alpha) == doctest::Approx(0.5 * dxx + 0.5 * alpha * dx).epsilon(1e-13));
  const DispersionParams kp2{KpSign::KP2, alpha, ZeroModePolicy::ProjectOut};
  CHECK(energy_functional(f, kp2) == doctest::Approx(-0.5 * dxx - 0.5 * alpha * dx).epsilon(1e-13));
  CHECK(energy_functional(Field(g), alpha) == 0.0);

  std::vector<double> bad(g.size(), 1.0);
  CHECK_THROWS_AS(energy_functional(Field::from_physical(g, bad), alpha), ZeroMassError);
}

TEST_CASE("energy is translation invariant") {
  const SpectralGrid g = make_grid(32, 32, 8 * pi, 8 * pi);
  SampleRng rng(3, 0);
  // Band-limited so that the grid sum of u³ is exact.
  const Field f = dealias(random_real_field(g, rng));
  const double e0 = energy_functional(f, 1.0);
  // Shift by (1.3, -0.4) through the spectral phase.
  const Symbol shift{[](double xi, double mu) { return std::polar(1.0, -(1.3 * xi - 0.4 * mu)); }, true, false};
  const Field moved = apply_symbol(f, shift);
  CHECK(std::abs(energy_functional(moved, 1.0) - e0) <= 1e-12 * std::abs(e0));
  // Lattice shift: a permutation of samples.
  auto u = f.physical();
  std::vector<double> r(u.size());
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) r[g.index((i + 5) % 32, (j + 3) % 32)] = u[g.index(i, j)];
  }
  CHECK(std::abs(energy_functional(Field::from_physical(g, r), 1.0) - e0) <= 1e-12 * std::abs(e0));
}

TEST_CASE("Hamiltonian is conserved along the flow, the printed form drifts") {
  const SpectralGrid g = make_grid(32, 32, 16 * pi, 16 * pi);
  std::vector<double> u(g.size());
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) {
      const double x = g.x(i) - g.lx() / 2;
      const double y = g.y(j) - g.ly() / 2;
      u[g.index(i, j)] = 0.5 * std::exp(-(x * x + y * y) / 32);
    }
  }
  const Field f = nyquist_project(zero_mode_project(Field::from_physical(g, u)));
  const DispersionParams p{KpSign::KP1, 1.0, ZeroModePolicy::ProjectOut};
  SolverConfig c;
  c.dt = 1e-3;
  c.t_final = 0.2;
  EvolveOptions o;
  o.quiet = true;
  const Trajectory t = evolve(f, c, p, o);
  const double e0 = t.diagnostics.front().energy;
  const double e1 = t.diagnostics.back().energy;
  const double p0 = printed_energy_functional(t.states.front(), 1.0);
  const double p1 = printed_energy_functional(t.states.back(), 1.0);
  MESSAGE("Hamiltonian drift " << std::abs(e1 - e0) / std::abs(e0) << ", printed-form drift "
                               << std::abs(p1 - p0) / std::abs(p0));
  CHECK(std::abs(e1 - e0) <= 1e-8 * std::abs(e0));
  CHECK(std::abs(t.diagnostics.back().mass - t.diagnostics.front().mass) <= 1e-12 * t.diagnostics.front().mass);
}

TEST_CASE("SpaceTimeField round trip and layout") {
  const SpectralGrid g = make_grid(8, 4, 2 * pi, 2 * pi);
  const int nt = 6;
  std::vector<cplx> s(g.size() * nt);
  SampleRng rng(4, 0);
  for (auto& v : s) v = {rng.normal(), rng.normal()};
  const SpaceTimeField u = SpaceTimeField::from_samples(g, nt, 3.0, s);
  const auto back = u.samples();
  for (std::size_t n = 0; n < s.size(); ++n) CHECK(std::abs(back[n] - s[n]) < 1e-12);
  double l2 = 0.0;
  for (const auto& v : s) l2 += std::norm(v);
  CHECK(u.l2_norm() == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
  CHECK(u.time(0) == 0.0);
  CHECK(u.time(5) == doctest::Approx(-0.5));
  CHECK(u.tau(1) == doctest::Approx(2 * pi / 3.0));
  CHECK_THROWS_AS(SpaceTimeField(g, 5, 1.0), SpecError);
  CHECK_THROWS_AS(SpaceTimeField::from_samples(g, nt, 3.0, std::span<const cplx>(s).first(10)), SpecError);
}

TEST_CASE("free waves sit on the dispersion surface") {
  // ξ = μ = 1, α = 0: ω = 2, and W = π puts τ = 2 on the lattice.
  const SpectralGrid g = make_grid(8, 8, 2 * pi, 2 * pi);
  Field phi(g);
  phi.set_mode(1, 1, 1.0);
  const SpaceTimeField u = SpaceTimeField::sample(g, 16, pi, [&](double t) { return linear_propagate(phi, t, kKp1); });
  double peak = 0.0;
  int where = -1;
  for (int m = 0; m < 16; ++m) {
    if (std::abs(u.at(1, 1, m)) > peak) {
      peak = std::abs(u.at(1, 1, m));
      where = m;
    }
  }
  CHECK(u.tau(where) == doctest::Approx(2.0));
  const double b0 = bourgain_norm(u, {0, 0, 0}, kKp1);
  // Larger b amplifies roundoff-level coefficients far from the surface.
  for (double b : {0.5, 1.0, 2.0}) CHECK(bourgain_norm(u, {0, 0, b}, kKp1) == doctest::Approx(b0).epsilon(1e-10));

  // Off-lattice frequency: energy leaks off τ = ω, the ratio stays bounded.
  const SpaceTimeField v = SpaceTimeField::sample(g, 16, 2.9, [&](double t) { return linear_propagate(phi, t, kKp1); });
  const double v0 = bourgain_norm(v, {0, 0, 0}, kKp1);
  const double v1 = bourgain_norm(v, {0, 0, 1}, kKp1);
  MESSAGE("off-lattice leakage ratio b=1: " << v1 / v0);
  CHECK(std::isfinite(v1 / v0));
}

TEST_CASE("bourgain_norm") {
  const SpectralGrid g = make_grid(8, 8, 2 * pi, 2 * pi);
  const int nt = 8;
  SpaceTimeField u(g, nt, 2.0);
  SampleRng rng(5, 0);
  for (int m = 0; m < nt; ++m) {
    for (int j = 0; j < 8; ++j) {
      for (int i = 1; i < 8; ++i) u.at(i, j, m) = {rng.normal(), rng.normal()};
    }
  }
  CHECK(bourgain_norm(u, {0, 0, 0}, kKp1) == doctest::Approx(u.l2_norm()).epsilon(1e-12));

  SpaceTimeField one(g, nt, 2.0);
  one.at(2, 7, 3) = 1.0;
  const double xi = 2.0;
  const double mu = -1.0;
  const double sig = one.tau(3) - omega(xi, mu, kKp1);
  const double want = std::pow(bracket(sig), 0.7) * std::pow(bracket(xi), 1.0) * std::pow(bracket(mu), 2.0);
  CHECK(bourgain_norm(one, {1, 2, 0.7}, kKp1) == doctest::Approx(want).epsilon(1e-13));

  SpaceTimeField bad(g, nt, 2.0);
  bad.at(0, 1, 0) = 1.0;
  CHECK_THROWS_AS(bourgain_norm(bad, {0, 0, 0}, kKp1), ZeroMassError);
}

TEST_CASE("dyadic_eta") {
  CHECK(dyadic_eta(0, 0.5) == 1.0);
  CHECK(dyadic_eta(3, 0.0) == 0.0);
  CHECK(dyadic_eta(1, 0.0) == 0.0);
  // η₂(6) = ψ(1.5) − ψ(3) = 1/2; η₂(3) = ψ(0.75) − ψ(1.5) = 1/2.
  CHECK(dyadic_eta(2, 6.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dyadic_eta(2, 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(dyadic_eta(2, 100.0) == 0.0);
}

TEST_CASE("dyadic telescoping") {
  SampleRng rng(6, 0);
  for (int n = 0; n < 2000; ++n) {
    const double x = rng.log_uniform_signed(1e-3, 1e12);
    double sum = 0.0;
    for (int J = 0; J <= 40; ++J) {
      sum += dyadic_eta(J, x);
      CHECK(std::abs(sum - cutoff_psi(std::ldexp(x, -J))) <= 1e-15);
    }
  }
}

TEST_CASE("modulation_project") {
  const SpectralGrid g = make_grid(8, 8, 2 * pi, 2 * pi);
  Field phi(g);
  phi.set_mode(1, 1, cplx(0.6, 0.8));
  phi.set_mode(2, -1, cplx(0.0, -1.0));
  // ω(1,1) = 2 and ω(2,-1) = 32.5 both lie on the τ lattice 2πm/W for W = 4π.
  const SpaceTimeField u = SpaceTimeField::sample(g, 256, 4 * pi, [&](double t) { return linear_propagate(phi, t, kKp1); });
  // Every coefficient with |σ| > 1 vanishes to roundoff for the on-lattice free wave.
  const SpaceTimeField p0 = modulation_project(u, 0, kKp1);
  for (std::size_t n = 0; n < u.size(); ++n) CHECK(std::abs(p0.spectral()[n] - std::abs(u.spectral()[n])) < 1e-10);
  CHECK(modulation_project(u, 5, kKp1).l2_norm() < 1e-10 * u.l2_norm());

  const SpaceTimeField keep = modulation_project(u, 0, kKp1, ProjectionVariant::KeepPhase);
  for (std::size_t n = 0; n < u.size(); ++n) CHECK(std::abs(keep.spectral()[n] - u.spectral()[n]) < 1e-10);

  // Telescoping on generic data.
  SpaceTimeField r(g, 16, 1.0);
  SampleRng rng(7, 0);
  for (int m = 0; m < 16; ++m) {
    for (int j = 0; j < 8; ++j) {
      for (int i = 1; i < 8; ++i) r.at(i, j, m) = {rng.normal(), rng.normal()};
    }
  }
  const int J = 12;
  std::vector<cplx> sum(r.size(), 0.0);
  for (int j = 0; j <= J; ++j) {
    const auto pj = modulation_project(r, j, kKp1, ProjectionVariant::KeepPhase);
    for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += pj.spectral()[n];
  }
  for (int m = 0; m < 16; ++m) {
    for (int j = 0; j < 8; ++j) {
      for (int i = 1; i < 8; ++i) {
        const double sig = r.tau(m) - omega(g.xi(i), g.mu(j), kKp1);
        const cplx want = cutoff_psi(std::ldexp(sig, -J)) * r.at(i, j, m);
        CHECK(std::abs(sum[r.index(i, j, m)] - want) < 1e-13);
      }
    }
  }
}

TEST_CASE("strichartz_ratio") {
  const SpectralGrid g = make_grid(16, 16, 4 * pi, 4 * pi);
  SpaceTimeField zero(g, 16, 2.0);
  CHECK_THROWS_AS(strichartz_ratio(zero, 2, 4, 0.9, kKp1), UndefinedRatioError);
  SampleRng rng(8, 0);
  const SpaceTimeField u = random_shell_spacetime(g, 16, 2.0, 3, kKp1, rng);
  const double r = strichartz_ratio(u, 3, 4, 0.9, kKp1);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
  CHECK(std::isfinite(strichartz_ratio(u, 3, 2, 0.9, kKp1)));
  CHECK_THROWS_AS(strichartz_ratio(u, 3, 1.5, 0.9, kKp1), SpecError);
  CHECK_THROWS_AS(strichartz_ratio(u, 3, 4, 1.0, kKp1), SpecError);
}

TEST_CASE("convolution_bound_check") {
  CHECK(convolution_bound_check(2.0, 0.0).lhs_product == doctest::Approx(pi / 2).epsilon(1e-12));
  // ∫ dt / ((1+t²)|t|^{1/2}) = π√2
  CHECK(convolution_bound_check(2.0, 0.0).lhs_singular == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-10));
  // Residues: ∫ dt/((1+t²)(1+(t−a)²)) = 2π/(a²+4).
  for (double a : {-7.0, 0.5, 3.0, 40.0}) {
    const auto r = convolution_bound_check(2.0, a);
    CHECK(r.lhs_product == doctest::Approx(2 * pi / (a * a + 4)).epsilon(1e-10));
    CHECK(r.ratio_product == doctest::Approx(r.lhs_product * (1 + a * a)).epsilon(1e-14));
    CHECK(r.error_estimate <= 1e-10);
  }
  // Mirror symmetry a → −a.
  for (double gamma : {1.1, 1.5, 3.0}) {
    const auto p = convolution_bound_check(gamma, 13.0);
    const auto m = convolution_bound_check(gamma, -13.0);
    CHECK(p.lhs_product == doctest::Approx(m.lhs_product).epsilon(1e-10));
    CHECK(p.lhs_singular == doctest::Approx(m.lhs_singular).epsilon(1e-10));
  }
  CHECK_THROWS_AS(convolution_bound_check(1.0, 0.0), SpecError);
  CHECK_THROWS_AS(convolution_bound_check(0.5, 1.0), SpecError);
}

TEST_CASE("resonance examples") {
  CHECK(resonance(1, 1, 0, 0, kKp1) == doctest::Approx(30.0).epsilon(1e-15));
  CHECK(std::abs(resonance(1, 1, std::sqrt(60.0), 0, kKp1)) < 1e-12);
  CHECK(resonance_identity_check(1, 1, 0, 0, kKp1) < 1e-12);
  // Parallel group lines: the transverse bracket vanishes.
  for (double alpha : {0.0, 1.0, -2.0}) {
    const DispersionParams p1{KpSign::KP1, alpha, ZeroModePolicy::ProjectOut};
    const DispersionParams p2{KpSign::KP2, alpha, ZeroModePolicy::ProjectOut};
    const double x1 = 1.3;
    const double x2 = -0.4;
    const double c = 2.5;
    const double q = x1 * x1 + x1 * x2 + x2 * x2;
    const double r1 = resonance(x1, x2, c * x1, c * x2, p1);
    const double r2 = resonance(x1, x2, c * x1, c * x2, p2);
    CHECK(r1 == doctest::Approx(x1 * x2 * (x1 + x2) * (5 * q - 3 * alpha)).epsilon(1e-13));
    CHECK(r2 == doctest::Approx(x1 * x2 * (x1 + x2) * (-5 * q - 3 * alpha)).epsilon(1e-13));
    if (alpha == 0.0) CHECK(std::abs(r1) == doctest::Approx(std::abs(r2)).epsilon(1e-14));
  }
  // Degenerate ξ₁ + ξ₂ = 0.
  const double mu = 0.7;
  CHECK(resonance(1, -1, mu, -mu, kKp1) == doctest::Approx(-omega(1, mu, kKp1) - omega(-1, -mu, kKp1)).epsilon(1e-15));
  CHECK_THROWS_AS(resonance(1, -1, mu, 0.2, kKp1), SingularSymbolError);
  CHECK_THROWS_AS(resonance(0, 1, 0, 0, kKp1), SingularSymbolError);
}

TEST_CASE("resonance identity and symmetry on random samples") {
  for (double alpha : {-2.0, -0.5, 0.0, 1.3, 2.0}) {
    for (const auto& base : {kKp1, kKp2}) {
      DispersionParams p = base;
      p.alpha = alpha;
      SampleRng rng(9, static_cast<std::uint64_t>(alpha * 10 + 50));
      for (int n = 0; n < 2000; ++n) {
        const double x1 = rng.log_uniform_signed();
        const double x2 = rng.log_uniform_signed();
        const double m1 = rng.log_uniform_signed();
        const double m2 = rng.log_uniform_signed();
        CHECK(resonance_identity_check(x1, x2, m1, m2, p) <= 1e-9);
        CHECK(resonance(x1, x2, m1, m2, p) == resonance(x2, x1, m2, m1, p));
      }
    }
  }
}

TEST_CASE("kp2_lower_bound_ratio") {
  CHECK(kp2_lower_bound_ratio(1, 1, 0, 0) == doctest::Approx(1.875).epsilon(1e-15));
  SampleRng rng(10, 0);
  double worst = INFINITY;
  for (int n = 0; n < 10000; ++n) {
    const double x1 = rng.log_uniform_signed();
    const double x2 = rng.log_uniform_signed();
    if (std::abs(x1 + x2) < 1e-3) continue;
    worst = std::min(worst, kp2_lower_bound_ratio(x1, x2, rng.log_uniform_signed(), rng.log_uniform_signed()));
  }
  CHECK(worst >= 1.0);
  CHECK_THROWS_AS(kp2_lower_bound_ratio(0, 1, 0, 0), SingularSymbolError);
}

TEST_CASE("classify_interaction") {
  CHECK(classify_interaction(50, -49.5, 0).tag == InteractionTag::LowHH);
  CHECK(classify_interaction(1, 2, 0).tag == InteractionTag::LowLL);
  CHECK(classify_interaction(100, 1, 0).tag == InteractionTag::HighHL);
  CHECK(classify_interaction(60, 50, 0).tag == InteractionTag::HighHH);
  CHECK(classify_interaction(1, 2, 0).threshold == 10.0);
  CHECK(classify_interaction(1, 2, -30).threshold == 30.0);
  // |ξ₁+ξ₂| ≤ M₀, one frequency above 1.5·M₀ and one below M₀: no subcase.
  CHECK(classify_interaction(16, -8, 0).tag == InteractionTag::Other);
  CHECK(to_string(InteractionTag::HighHL) == "HighHL");
}

TEST_CASE("sampling streams are reproducible and thread-count independent") {
  SampleRng a(42, 7);
  SampleRng b(42, 7);
  SampleRng c(42, 8);
  for (int n = 0; n < 100; ++n) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.normal() != c.normal());

  const auto run = [] {
    std::vector<double> out(5000);
    parallel_for(out.size(), [&](std::size_t n) {
      SampleRng r(3, n);
      out[n] = r.normal();
    });
    return out;
  };
  ::setenv("KP5_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  const auto one = run();
  ::setenv("KP5_THREADS", "4", 1);
  CHECK(thread_count() == 4);
  const auto four = run();
  ::unsetenv("KP5_THREADS");
  CHECK(one == four);

  CHECK_THROWS_AS(parallel_for(10, [](std::size_t n) {
                    if (n == 3) throw SpecError("boom");
                  }),
                  SpecError);
}

TEST_CASE("random fields") {
  const SpectralGrid g = make_grid(32, 32, 8 * pi, 8 * pi);
  SampleRng r1(7, 0);
  SampleRng r2(7, 0);
  const Field a = random_shell_field(g, 3, r1);
  const Field b = random_shell_field(g, 3, r2);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(a.spectral()[n] == b.spectral()[n]);
  CHECK(a.is_real());
  CHECK(zero_line_content(a) == 0.0);
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) {
      const double rad = std::hypot(g.signed_kx(i), g.signed_ky(j));
      if (rad < 4.0 || rad > 16.0) CHECK(a.at(i, j) == cplx(0.0));
    }
  }
  const SpaceTimeField s = random_shell_spacetime(g, 8, 1.0, 4, kKp1, r1);
  for (int m = 0; m < 8; ++m) {
    for (int j = 0; j < 32; ++j) {
      for (int i = 1; i < 32; ++i) {
        const double sig = std::abs(s.tau(m) - omega(g.xi(i), g.mu(j), kKp1));
        if (sig < 8.0 || sig > 32.0) CHECK(s.at(i, j, m) == cplx(0.0));
      }
    }
  }
}

TEST_CASE("verification suites pass at reduced size and are deterministic") {
  for (const auto& name : suite_names()) {
    const std::size_t n = name == "dyadic" ? 20000 : name == "strichartz" ? 2 : name == "convolution" ? 21 : 200;
    const SuiteReport a = run_suite(name, 5, n);
    const SuiteReport b = run_suite(name, 5, n);
    INFO(name);
    CHECK(a.passed());
    CHECK(a.rows == b.rows);
    CHECK(!a.rows.empty());
    for (const auto& row : a.rows) CHECK(row.size() == a.columns.size());
  }
  CHECK_THROWS_AS(run_suite("nope", 0), SpecError);
  CHECK(is_suite("dyadic"));
  CHECK_FALSE(is_suite("Dyadic"));
  CHECK(regression_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
}
