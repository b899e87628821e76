#pragma once

#include "plate/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>

namespace plate {

/// Real grid function together with its Fourier coefficients.  Immutable once
/// built; both representations are kept in sync at construction.
class SpectralField {
 public:
  static SpectralField from_values(GridPtr grid, RealVector values) {
    if (!grid) throw std::invalid_argument("null grid");
    if (values.size() != grid->size()) throw std::invalid_argument("value count does not match grid");
    auto coeffs = grid->forward(values);
    return SpectralField(std::move(grid), std::move(values), std::move(coeffs));
  }

  static SpectralField from_coeffs(GridPtr grid, ComplexVector coeffs) {
    if (!grid) throw std::invalid_argument("null grid");
    if (coeffs.size() != grid->spectral_size()) throw std::invalid_argument("coefficient count does not match grid");
    auto values = grid->backward(coeffs);
    return SpectralField(std::move(grid), std::move(values), std::move(coeffs));
  }

  static SpectralField zero(GridPtr grid) {
    const auto n = grid->size(), m = grid->spectral_size();
    return SpectralField(std::move(grid), RealVector(n, 0.0), ComplexVector(m, Complex{}));
  }

  /// Samples f(x) at every grid point.
  static SpectralField sample(GridPtr grid, const std::function<double(std::span<const double>)>& f) {
    RealVector values(grid->size());
    std::vector<double> x(grid->geometry().n);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (int d = 0; d < grid->geometry().n; ++d) x[d] = grid->coordinate(i, d);
      values[i] = f(x);
    }
    return from_values(std::move(grid), std::move(values));
  }

  /// Multiplies every coefficient by m(|ξ|²).
  SpectralField apply_multiplier(const std::function<double(double)>& m) const {
    ComplexVector out(coeffs_.size());
    const auto xi2 = grid_->xi_squared();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] * m(xi2[i]);
    return from_coeffs(grid_, std::move(out));
  }

  const GridPtr& grid() const { return grid_; }
  const GridGeometry& geometry() const { return grid_->geometry(); }
  std::span<const double> values() const { return values_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  bool same_geometry(const SpectralField& other) const { return geometry() == other.geometry(); }

 private:
  SpectralField(GridPtr grid, RealVector values, ComplexVector coeffs)
      : grid_(std::move(grid)), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  GridPtr grid_;
  RealVector values_;
  ComplexVector coeffs_;
};

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (!a.same_geometry(b)) throw std::invalid_argument("geometry mismatch");
  ComplexVector c(a.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] + b.coeffs()[i];
  return SpectralField::from_coeffs(a.grid(), std::move(c));
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (!a.same_geometry(b)) throw std::invalid_argument("geometry mismatch");
  ComplexVector c(a.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs()[i] - b.coeffs()[i];
  return SpectralField::from_coeffs(a.grid(), std::move(c));
}

inline SpectralField operator*(double s, const SpectralField& a) {
  ComplexVector c(a.coeffs().begin(), a.coeffs().end());
  for (auto& z : c) z *= s;
  return SpectralField::from_coeffs(a.grid(), std::move(c));
}

/// max_k |F_k| over the stored half-spectrum.
inline double max_coefficient(const SpectralField& f) {
  double m = 0.0;
  for (const auto& z : f.coeffs()) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_value(const SpectralField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace plate
