#pragma once

#include "plate/smooth_cutoff.hpp"
#include "plate/spectral_field.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace plate {

struct FrequencySplit {
  SpectralField low;
  SpectralField high;
};

/// Splits f into χ(2|ξ|) f̂ and (1 − χ(2|ξ|)) f̂.  The high part is formed as
/// f̂ − low so that low + high reproduces f̂ exactly.
inline FrequencySplit frequency_split(const SpectralField& f,
                                      const std::function<double(double)>& cutoff = low_frequency_cutoff) {
  const auto xi2 = f.grid()->xi_squared();
  ComplexVector low(f.coeffs().size()), high(f.coeffs().size());
  for (std::size_t i = 0; i < low.size(); ++i) {
    low[i] = cutoff(2.0 * std::sqrt(xi2[i])) * f.coeffs()[i];
    high[i] = f.coeffs()[i] - low[i];
  }
  return {SpectralField::from_coeffs(f.grid(), std::move(low)), SpectralField::from_coeffs(f.grid(), std::move(high))};
}

/// Localises f̂ to the annulus 2^{k-1} ≤ |ξ| ≤ 2^{k+1} with φ(2^{-k}|ξ|).
inline SpectralField dyadic_piece(const SpectralField& f, int k) {
  const double scale = std::ldexp(1.0, -k);
  return f.apply_multiplier([scale](double xi_sq) { return dyadic_bump(scale * std::sqrt(xi_sq)); });
}

/// Range of k whose pieces can be nonzero for modes with 0 < |ξ| ≤ xi_max.
inline std::pair<int, int> dyadic_range(double xi_min, double xi_max) {
  return {static_cast<int>(std::floor(std::log2(xi_min))) - 1, static_cast<int>(std::ceil(std::log2(xi_max))) + 1};
}

}  // namespace plate
