#pragma once

#include "plate/multiplier_theory.hpp"
#include "plate/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

namespace plate {

inline constexpr int kSupNormZoom = 4;
/// Largest refined grid used for sup norms; 3-D grids fall back to a smaller zoom.
inline constexpr std::size_t kMaxZoomPoints = std::size_t(1) << 24;

/// kSupNormZoom, halved until the refined grid fits in kMaxZoomPoints.
inline int sup_norm_zoom(const GridGeometry& g) {
  int zoom = kSupNormZoom;
  while (zoom > 1) {
    std::size_t total = 1;
    for (int d = 0; d < g.n; ++d) total *= g.points_per_axis * static_cast<std::size_t>(zoom);
    if (total <= kMaxZoomPoints) break;
    zoom /= 2;
  }
  return zoom;
}

/// Band-limited interpolation of the field onto a grid `zoom` times finer, by
/// zero-padding the spectrum.  The Nyquist planes are split evenly.
inline RealVector spectral_zoom(const SpectralField& f, int zoom) {
  if (zoom < 1) throw std::invalid_argument("zoom factor must be >= 1");
  if (zoom == 1) return RealVector(f.values().begin(), f.values().end());
  const auto& g = f.geometry();
  GridGeometry fine_geometry = g;
  fine_geometry.points_per_axis = g.points_per_axis * static_cast<std::size_t>(zoom);
  const auto fine = Grid::make(fine_geometry);
  ComplexVector fine_coeffs(fine->spectral_size(), Complex{});

  const long N = static_cast<long>(g.points_per_axis);
  const long M = static_cast<long>(fine_geometry.points_per_axis);
  const auto coarse_coeffs = f.coeffs();
  const auto& grid = *f.grid();

  // Coarse modes with |k| = N/2 on a non-last axis are split between +N/2 and -N/2.
  std::vector<long> k(g.n);
  for (std::size_t i = 0; i < coarse_coeffs.size(); ++i) {
    double weight = 1.0;
    int nyquist_axes = 0;
    for (int d = 0; d < g.n; ++d) {
      k[d] = grid.wavenumber_index(i, d);
      if (d < g.n - 1 && std::abs(k[d]) == N / 2) ++nyquist_axes;
    }
    if (k[g.n - 1] == N / 2) weight *= 0.5;
    const int copies = 1 << nyquist_axes;
    weight /= copies;
    for (int mask = 0; mask < copies; ++mask) {
      std::size_t index = 0;
      int bit = 0;
      for (int d = 0; d < g.n - 1; ++d) {
        long kd = k[d];
        if (std::abs(kd) == N / 2) {
          kd = (mask >> bit & 1) ? -N / 2 : N / 2;
          ++bit;
        }
        const long wrapped = kd >= 0 ? kd : kd + M;
        index = index * static_cast<std::size_t>(M) + static_cast<std::size_t>(wrapped);
      }
      index = index * static_cast<std::size_t>(M / 2 + 1) + static_cast<std::size_t>(k[g.n - 1]);
      fine_coeffs[index] += weight * coarse_coeffs[i];
    }
  }
  return fine->backward(fine_coeffs);
}

/// Riemann-sum L^p norm (Σ|u|^p h^n)^{1/p}; p = ∞ (p_inv = 0) takes the
/// maximum after spectral refinement by sup_norm_zoom.
inline double lp_norm(const SpectralField& f, const Rational& p_inv) {
  if (p_inv < 0 || p_inv > 1) throw std::invalid_argument("1/p must lie in [0,1]");
  if (p_inv == Rational(0)) {
    const auto fine = spectral_zoom(f, sup_norm_zoom(f.geometry()));
    double m = 0.0;
    for (double v : fine) m = std::max(m, std::abs(v));
    return m;
  }
  const double p = 1.0 / to_double(p_inv);
  const auto values = f.values();
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  // Ratios below 1e-24 change the sum by less than 1e-24 per point; skipping them
  // also keeps std::pow off its slow underflow path.
  const double inv = 1.0 / scale;
  if (p == 2.0) {
    for (double v : values) sum += (v * inv) * (v * inv);
  } else if (p == 1.0) {
    for (double v : values) sum += std::abs(v) * inv;
  } else if (p == 4.0) {
    for (double v : values) {
      const double s = (v * inv) * (v * inv);
      sum += s * s;
    }
  } else {
    for (double v : values) {
      const double r = std::abs(v) * inv;
      if (r > 1e-24) sum += std::pow(r, p);
    }
  }
  return scale * std::pow(sum * f.geometry().cell_volume(), 1.0 / p);
}

/// Raw grid maximum without refinement.
inline double grid_sup(const SpectralField& f) { return max_abs_value(f); }

/// L² norm through Plancherel on the coefficients.
inline double spectral_l2_norm(const SpectralField& f) {
  const auto mult = f.grid()->multiplicity();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) sum += mult[i] * std::norm(f.coeffs()[i]);
  return std::sqrt(sum * f.geometry().dual_cell_measure());
}

}  // namespace plate
