#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/field.hpp"
#include "kp5/norms.hpp"

namespace kp5 {

/// u(t, x, y) on grid × nt time samples of a periodic window of length
/// t_window.  Sample m sits at t_m = m_signed·Δt (m_signed in
/// {-nt/2, ..., nt/2-1}), so t = 0 is sample 0.
///
/// Spectral layout is (τ, μ, ξ), row-major. The time frequency is oriented so
/// that a free wave e^{i(xξ+yμ)}e^{-itω(ξ,μ)} sits at τ = ω(ξ,μ), making the
/// modulation σ = τ − ω vanish on solutions of the linear flow:
///   u(t,x,y) = (N)^{-1/2} Σ c(ξ,μ,τ) e^{i(xξ+yμ)} e^{-iτt}.
class SpaceTimeField {
 public:
  SpaceTimeField(const SpectralGrid& grid, int nt, double t_window);
  SpaceTimeField(const SpectralGrid& grid, int nt, double t_window, std::vector<cplx> spectral);

  /// samples[(m*ny + j)*nx + i] = u(t_m, x_i, y_j).
  static SpaceTimeField from_samples(const SpectralGrid& grid, int nt, double t_window,
                                     std::span<const cplx> samples);
  /// Samples slice(t_m) for every m.
  static SpaceTimeField sample(const SpectralGrid& grid, int nt, double t_window,
                               const std::function<Field(double)>& slice);

  const SpectralGrid& grid() const { return grid_; }
  int nt() const { return nt_; }
  double t_window() const { return t_window_; }
  double dt() const { return t_window_ / nt_; }
  std::size_t size() const { return data_.size(); }

  int signed_m(int m) const { return m < nt_ / 2 ? m : m - nt_; }
  double time(int m) const { return signed_m(m) * dt(); }
  double tau(int m) const;

  std::size_t index(int i, int j, int m) const {
    return (static_cast<std::size_t>(m) * grid_.ny() + j) * grid_.nx() + i;
  }

  std::span<const cplx> spectral() const { return data_; }
  std::span<cplx> spectral_mut() { return data_; }
  cplx& at(int i, int j, int m) { return data_[index(i, j, m)]; }
  const cplx& at(int i, int j, int m) const { return data_[index(i, j, m)]; }

  std::vector<cplx> samples() const;
  double l2_norm() const;
  bool is_zero() const;

 private:
  SpectralGrid grid_;
  int nt_;
  double t_window_;
  std::vector<cplx> data_;
};

/// sqrt(Σ ⟨τ−ω⟩^{2b}⟨ξ⟩^{2s1}⟨μ⟩^{2s2}|c|²) over ξ ≠ 0.
double bourgain_norm(const SpaceTimeField& u, const NormSpec& spec, const DispersionParams& params);

/// η_0 = ψ, η_j(x) = ψ(2^{-j}x) − ψ(2^{1-j}x) for j >= 1.
double dyadic_eta(int j, double x);

enum class ProjectionVariant {
  Modulus,    ///< η_j(σ)|ĉ|: the phase is discarded
  KeepPhase,  ///< η_j(σ)ĉ
};

/// Multiplies the space-time spectrum by η_j(τ − ω(ξ, μ)).
SpaceTimeField modulation_project(const SpaceTimeField& u, int j, const DispersionParams& params,
                                  ProjectionVariant variant = ProjectionVariant::Modulus);

/// ‖|−i∂_x|^{1/2−1/r} f_j‖_{L^{2r/(r−2)}_T L^r} / (2^{j/2}‖f_j‖_{L²}) with f_j
/// the modulation projection of u.  The time norm runs over samples with
/// |t| <= T; r = 2 uses the sup in time.
double strichartz_ratio(const SpaceTimeField& u, int j, double r, double T, const DispersionParams& params,
                        ProjectionVariant variant = ProjectionVariant::Modulus);

}  // namespace kp5
