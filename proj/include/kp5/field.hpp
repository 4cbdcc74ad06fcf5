#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "kp5/dispersion.hpp"
#include "kp5/grid.hpp"

namespace kp5 {

using cplx = std::complex<double>;

/// A scalar field u(x, y) at fixed time, held by its unitary Fourier
/// coefficients.  Physical samples are produced on demand.
///
/// The reality flag asserts Hermitian symmetry c(-k,-l) = conj c(k,l); fields
/// built from real samples carry it, and operations keep it only when the
/// multiplier they apply respects the same symmetry.
class Field {
 public:
  explicit Field(const SpectralGrid& grid);
  Field(const SpectralGrid& grid, std::vector<cplx> spectral, bool real);

  static Field from_physical(const SpectralGrid& grid, std::span<const double> samples);
  static Field from_physical(const SpectralGrid& grid, std::span<const cplx> samples);

  const SpectralGrid& grid() const { return grid_; }
  bool is_real() const { return real_; }

  std::span<const cplx> spectral() const { return data_; }
  std::span<cplx> spectral_mut() { return data_; }

  cplx& at(int i, int j) { return data_[grid_.index(i, j)]; }
  const cplx& at(int i, int j) const { return data_[grid_.index(i, j)]; }

  /// Coefficient at signed wavenumber indices (k, l).
  cplx mode(int k, int l) const;
  void set_mode(int k, int l, cplx value);

  /// Real part of the physical samples (row-major, y outer).
  std::vector<double> physical() const;
  std::vector<cplx> physical_complex() const;

  /// Discrete ℓ² norm sqrt(Σ|c|²); equals sqrt(Σ|u_ij|²) by Plancherel.
  double l2_norm() const;

  /// max |c(-k,-l) - conj c(k,l)| / max|c|, or 0 for the zero field.
  double hermitian_defect() const;

  bool is_zero() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

 private:
  SpectralGrid grid_;
  std::vector<cplx> data_;
  bool real_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// ℓ² norm of a - b.
double l2_distance(const Field& a, const Field& b);

/// A Fourier multiplier m(ξ, μ) with its declared properties.
struct Symbol {
  std::function<cplx(double xi, double mu)> fn;
  /// m(-ξ,-μ) = conj m(ξ,μ); real fields stay real under it.
  bool hermitian = true;
  /// Has a 1/ξ factor; the ξ = 0 line is handled by the zero-mode policy.
  bool singular_on_zero_xi = false;
};

/// Multiplier values tabulated on a grid's lattice.
struct MultiplierTable {
  std::vector<cplx> values;
  /// Lattice points whose conjugate partner does not carry the negated
  /// wavenumber (Nyquist lines) and where m is not self-consistent. Real
  /// fields drop these points so that Hermitian symmetry survives.
  std::vector<std::size_t> unpaired;
  bool hermitian = true;
  bool singular_on_zero_xi = false;
};

MultiplierTable tabulate(const SpectralGrid& grid, const Symbol& symbol);

/// Pointwise spectral multiplication by a tabulated symbol.  For singular
/// symbols the ξ = 0 line is zeroed (ProjectOut) or must already be zero
/// (Error, otherwise SingularSymbolError).
Field apply_table(const Field& f, const MultiplierTable& table,
                  ZeroModePolicy policy = ZeroModePolicy::ProjectOut);

/// Tabulate-and-apply; NaN/Inf multiplier values raise SymbolEvaluationError.
Field apply_symbol(const Field& f, const Symbol& m,
                   ZeroModePolicy policy = ZeroModePolicy::ProjectOut);

/// Zero every coefficient on the ξ = 0 line.
Field zero_mode_project(const Field& f);

/// 2/3 rule: zero coefficients with |k| > nx/3 or |l| > ny/3.
Field dealias(const Field& f);

/// Zero the k = -nx/2 and l = -ny/2 lines, which have no conjugate partner.
Field nyquist_project(const Field& f);

/// Largest |c| on the ξ = 0 line.
double zero_line_content(const Field& f);

namespace symbols {

Symbol identity();
/// iξ
Symbol dx(int order = 1);
/// 1/(iξ)
Symbol dx_inverse();
/// (iμ)²/(iξ): the ∂_x^{-1}∂_y² term.
Symbol dx_inverse_dy2();
/// iμ/(iξ): ∂_x^{-1}∂_y.
Symbol dx_inverse_dy();
/// |ξ|^s
Symbol abs_dx_power(double s);
/// ⟨ξ⟩^{s1}⟨μ⟩^{s2}
Symbol sobolev_weight(double s1, double s2);
/// e^{-itω(ξ,μ)}: the free flow of (L5KP) under the unitary convention.
Symbol propagator(double t, const DispersionParams& params);
/// α(iξ)³ + sign·(iξ)⁵ + (iμ)²/(iξ): the linear operator in ∂_t u + Lu = 0.
Symbol linear_operator(const DispersionParams& params);

}  // namespace symbols

}  // namespace kp5
