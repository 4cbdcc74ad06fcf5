#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/errors.hpp"
#include "kp5/field.hpp"
#include "kp5/norms.hpp"

namespace kp5 {

struct SolverConfig {
  double dt = 1e-3;
  double t_final = 0.1;
  int picard_max_iters = 50;
  double picard_tol = 1e-12;
  /// Trapezoid nodes per time step in the Duhamel integral (>= 2).
  int quadrature_nodes = 2;
  /// T in ψ_T(t) = ψ(t/T); must lie in (0, 1).
  double cutoff_T = 0.5;

  void validate() const;
  /// t_final/dt, which must be an integer up to 1e-9 relative slack.
  int step_count() const;
};

struct DiagnosticRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  /// One H^{s1,s2} norm per requested monitor, in request order.
  std::vector<double> norms;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<DiagnosticRecord> diagnostics;
};

/// Raised when a step produces a non-finite sample. Holds the last finite
/// state and everything recorded up to it.
class BlowUpError : public Kp5Error {
 public:
  BlowUpError(const std::string& what, double time_reached, Trajectory partial)
      : Kp5Error(what), time_reached_(time_reached), partial_(std::move(partial)) {}
  double time_reached() const { return time_reached_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double time_reached_;
  Trajectory partial_;
};

/// Picard iterates stopped contracting (two consecutive distance increases
/// or non-finite iterates).
class ContractionFailure : public Kp5Error {
 public:
  ContractionFailure(const std::string& what, std::vector<double> distances)
      : Kp5Error(what), distances_(std::move(distances)) {}
  const std::vector<double>& distances() const { return distances_; }

 private:
  std::vector<double> distances_;
};

/// S(t)f: multiplies every coefficient by e^{-itω(ξ,μ)}.  This is the sign for
/// which ∂_t u + α∂³_x u ± ∂⁵_x u + ∂_x^{-1}∂²_y u = 0 holds with
/// u = Σ c e^{i(xξ+yμ)}.
Field linear_propagate(const Field& f, double t, const DispersionParams& params);

/// max over interior times of ‖∂_t u + Lu (+ u∂_x u)‖ with a central time
/// difference and spectral space derivatives.
double residual_check(const Trajectory& traj, const DispersionParams& params, bool include_nonlinear = false);

/// dealias(∂_x(dealias(f)²))/2, i.e. the u∂_x u term. Output has no ξ = 0 content.
Field nonlinear_rhs(const Field& f);

/// Strang step: S(dt/2), explicit midpoint for ∂_t u = −∂_x(u²)/2, S(dt/2).
/// Holds the half-step multiplier so repeated steps do not re-tabulate it.
class SplitStepper {
 public:
  SplitStepper(const SpectralGrid& grid, double dt, const DispersionParams& params, bool nonlinear = true);

  /// Throws BlowUpError (time_reached = 0) if the result is not finite.
  Field step(const Field& f) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  bool nonlinear_;
  ZeroModePolicy policy_;
  MultiplierTable half_;
};

Field step_splitstep(const Field& f, double dt, const DispersionParams& params, bool nonlinear = true);

struct EvolveOptions {
  std::vector<NormSpec> monitors;
  /// Keep every n-th state in the trajectory; the final state is always kept.
  int state_stride = 1;
  bool nonlinear = true;
  /// Called for every diagnostic record as soon as it is computed.
  std::function<void(const DiagnosticRecord&)> on_record;
  /// Called for each stored state (t, state).
  std::function<void(double, const Field&)> on_state;
  /// Receives the step-size heuristic warning (once per run). Null = stderr.
  std::function<void(const std::string&)> warn;
  bool quiet = false;
};

DiagnosticRecord diagnose(double t, const Field& f, const DispersionParams& params,
                          const std::vector<NormSpec>& monitors);

Trajectory evolve(const Field& f0, const SolverConfig& cfg, const DispersionParams& params,
                  const EvolveOptions& options = {});

/// Smooth plateau bump: 1 on [-1, 1], 0 outside (-2, 2), built from
/// B(s) = exp(-1/s) as B(2-|t|) / (B(2-|t|) + B(|t|-1)).
double cutoff_psi(double t);
double cutoff_psi_T(double t, double T);

struct PicardOptions {
  std::vector<NormSpec> monitors;
  /// Receives (n, d_n) as each distance is measured.
  std::function<void(int, double)> on_distance;
};

struct PicardResult {
  Trajectory trajectory;
  /// d_n = ‖u^{n+1} − u^n‖ in discrete space-time L².
  std::vector<double> distances;
  bool converged = false;
};

/// Iterates u^{n+1}(t) = ψ(t)S(t)φ − (ψ_T(t)/2)∫_0^t S(t−t')∂_x((u^n)²)(t')dt'
/// on t ∈ [0, t_final] with composite trapezoid quadrature.
PicardResult duhamel_picard(const Field& phi, const SolverConfig& cfg, const DispersionParams& params,
                            const PicardOptions& options = {});

}  // namespace kp5
