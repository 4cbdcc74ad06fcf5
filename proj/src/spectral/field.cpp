#include "kp5/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kp5/errors.hpp"
#include "kp5/fft.hpp"

namespace kp5 {
namespace {

std::vector<int> extents(const SpectralGrid& g) { return {g.ny(), g.nx()}; }

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

Field::Field(const SpectralGrid& grid) : grid_(grid), data_(grid.size()), real_(true) {}

Field::Field(const SpectralGrid& grid, std::vector<cplx> spectral, bool real)
    : grid_(grid), data_(std::move(spectral)), real_(real) {
  if (data_.size() != grid_.size()) throw SpecError("spectral data size does not match grid");
}

Field Field::from_physical(const SpectralGrid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw SpecError("sample count does not match grid");
  std::vector<cplx> data(samples.begin(), samples.end());
  fft::forward(data, extents(grid));
  // Enforce exact Hermitian symmetry; FFT roundoff leaves ~1e-17 asymmetry.
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const std::size_t p = grid.index(i, j);
      const std::size_t q = grid.partner(i, j);
      if (p < q) {
        const cplx avg = 0.5 * (data[p] + std::conj(data[q]));
        data[p] = avg;
        data[q] = std::conj(avg);
      } else if (p == q) {
        data[p] = cplx(data[p].real(), 0.0);
      }
    }
  }
  return Field(grid, std::move(data), true);
}

Field Field::from_physical(const SpectralGrid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size()) throw SpecError("sample count does not match grid");
  std::vector<cplx> data(samples.begin(), samples.end());
  fft::forward(data, extents(grid));
  return Field(grid, std::move(data), false);
}

cplx Field::mode(int k, int l) const {
  return data_[grid_.index(wrap(k, grid_.nx()), wrap(l, grid_.ny()))];
}

void Field::set_mode(int k, int l, cplx value) {
  data_[grid_.index(wrap(k, grid_.nx()), wrap(l, grid_.ny()))] = value;
}

std::vector<cplx> Field::physical_complex() const {
  std::vector<cplx> out(data_);
  fft::inverse(out, extents(grid_));
  return out;
}

std::vector<double> Field::physical() const {
  const auto z = physical_complex();
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](const cplx& c) { return c.real(); });
  return out;
}

double Field::l2_norm() const {
  double s = 0.0;
  for (const auto& c : data_) s += std::norm(c);
  return std::sqrt(s);
}

double Field::hermitian_defect() const {
  double scale = 0.0;
  for (const auto& c : data_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  for (int j = 0; j < grid_.ny(); ++j) {
    for (int i = 0; i < grid_.nx(); ++i) {
      defect = std::max(defect, std::abs(data_[grid_.partner(i, j)] - std::conj(at(i, j))));
    }
  }
  return defect / scale;
}

bool Field::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& c) { return c == cplx{}; });
}

Field& Field::operator+=(const Field& other) {
  if (!(grid_ == other.grid_)) throw SpecError("field grids differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
  real_ = real_ && other.real_;
  return *this;
}

Field& Field::operator-=(const Field& other) {
  if (!(grid_ == other.grid_)) throw SpecError("field grids differ");
  for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= other.data_[n];
  real_ = real_ && other.real_;
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

double l2_distance(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw SpecError("field grids differ");
  double s = 0.0;
  const auto x = a.spectral();
  const auto y = b.spectral();
  for (std::size_t n = 0; n < x.size(); ++n) s += std::norm(x[n] - y[n]);
  return std::sqrt(s);
}

MultiplierTable tabulate(const SpectralGrid& grid, const Symbol& symbol) {
  MultiplierTable table;
  table.values.assign(grid.size(), cplx{});
  table.hermitian = symbol.hermitian;
  table.singular_on_zero_xi = symbol.singular_on_zero_xi;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (symbol.singular_on_zero_xi && i == 0) continue;
      const cplx m = symbol.fn(grid.xi(i), grid.mu(j));
      if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
        const int k = grid.signed_kx(i);
        const int l = grid.signed_ky(j);
        throw SymbolEvaluationError("non-finite multiplier at lattice point (k=" + std::to_string(k) +
                                        ", l=" + std::to_string(l) + ")",
                                    k, l);
      }
      table.values[grid.index(i, j)] = m;
    }
  }
  if (symbol.hermitian) {
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        const bool nyquist = (grid.signed_kx(i) == -grid.nx() / 2) || (grid.signed_ky(j) == -grid.ny() / 2);
        if (!nyquist) continue;
        const std::size_t p = grid.index(i, j);
        const std::size_t q = grid.partner(i, j);
        const cplx mp = table.values[p];
        const cplx mq = table.values[q];
        if (std::abs(mq - std::conj(mp)) > 1e-12 * std::max(1.0, std::abs(mp))) {
          table.unpaired.push_back(p);
        }
      }
    }
  }
  return table;
}

Field apply_table(const Field& f, const MultiplierTable& table, ZeroModePolicy policy) {
  const SpectralGrid& g = f.grid();
  if (table.values.size() != g.size()) throw SpecError("multiplier table does not match grid");
  if (table.singular_on_zero_xi && policy == ZeroModePolicy::Error) {
    for (int j = 0; j < g.ny(); ++j) {
      if (f.at(0, j) != cplx{}) {
        throw SingularSymbolError("nonzero coefficient on the xi = 0 line at l = " +
                                  std::to_string(g.signed_ky(j)) + " under the Error zero-mode policy");
      }
    }
  }
  const bool real = f.is_real() && table.hermitian;
  std::vector<cplx> out(g.size());
  const auto in = f.spectral();
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = in[n] * table.values[n];
  if (real) {
    for (std::size_t p : table.unpaired) out[p] = cplx{};
  }
  return Field(g, std::move(out), real);
}

Field apply_symbol(const Field& f, const Symbol& m, ZeroModePolicy policy) {
  return apply_table(f, tabulate(f.grid(), m), policy);
}

Field zero_mode_project(const Field& f) {
  Field out(f);
  for (int j = 0; j < f.grid().ny(); ++j) out.at(0, j) = cplx{};
  return out;
}

Field dealias(const Field& f) {
  const SpectralGrid& g = f.grid();
  Field out(f);
  const double kmax = g.nx() / 3.0;
  const double lmax = g.ny() / 3.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (std::abs(g.signed_kx(i)) > kmax || std::abs(g.signed_ky(j)) > lmax) out.at(i, j) = cplx{};
    }
  }
  return out;
}

Field nyquist_project(const Field& f) {
  const SpectralGrid& g = f.grid();
  Field out(f);
  for (int j = 0; j < g.ny(); ++j) out.at(g.nx() / 2, j) = cplx{};
  for (int i = 0; i < g.nx(); ++i) out.at(i, g.ny() / 2) = cplx{};
  return out;
}

double zero_line_content(const Field& f) {
  double m = 0.0;
  for (int j = 0; j < f.grid().ny(); ++j) m = std::max(m, std::abs(f.at(0, j)));
  return m;
}

namespace symbols {

Symbol identity() {
  return {[](double, double) { return cplx(1.0, 0.0); }, true, false};
}

Symbol dx(int order) {
  return {[order](double xi, double) { return std::pow(cplx(0.0, xi), order); }, true, false};
}

Symbol dx_inverse() {
  return {[](double xi, double) { return 1.0 / cplx(0.0, xi); }, true, true};
}

Symbol dx_inverse_dy2() {
  return {[](double xi, double mu) { return cplx(-mu * mu, 0.0) / cplx(0.0, xi); }, true, true};
}

Symbol dx_inverse_dy() {
  return {[](double xi, double mu) { return cplx(mu / xi, 0.0); }, true, true};
}

Symbol abs_dx_power(double s) {
  return {[s](double xi, double) { return cplx(xi == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(std::abs(xi), s), 0.0); },
          true, false};
}

Symbol sobolev_weight(double s1, double s2) {
  return {[s1, s2](double xi, double mu) {
            return cplx(std::pow(1.0 + xi * xi, 0.5 * s1) * std::pow(1.0 + mu * mu, 0.5 * s2), 0.0);
          },
          true, false};
}

Symbol propagator(double t, const DispersionParams& params) {
  DispersionParams p = params;
  p.zero_mode = ZeroModePolicy::ProjectOut;
  return {[t, p](double xi, double mu) { return std::polar(1.0, -t * dispersion_omega(xi, mu, p)); }, true, true};
}

Symbol linear_operator(const DispersionParams& params) {
  DispersionParams p = params;
  p.zero_mode = ZeroModePolicy::ProjectOut;
  return {[p](double xi, double mu) { return cplx(0.0, dispersion_omega(xi, mu, p)); }, true, true};
}

}  // namespace symbols

}  // namespace kp5
