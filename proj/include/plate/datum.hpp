#pragma once

// Initial data realized on a grid.

#include "plate/smooth_cutoff.hpp"
#include "plate/spectral_field.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plate {

enum class DatumKind {
  Gaussian,           // e^{-|x|²/(2w²)}
  SmoothBump,         // C∞ bump on |x| < radius, optionally band-limited by χ(2|ξ|/band_limit)
  SingularPower,      // |x|^{-k} on |x| ≤ 1, capped at one grid spacing
  BandLimitedRadial,  // f̂(ξ) = smooth bump in |ξ| on [r_lo, r_hi]
  RandomBandLimited,  // random coefficients on |ξ| ≤ band_limit
  LowFrequencyPower,  // f̂(ξ) = |ξ|^{-k} χ(2|ξ|/band_limit): in L^p exactly for 1/p < 1 − k/n
};

inline std::string_view to_string(DatumKind k) {
  switch (k) {
    case DatumKind::Gaussian: return "gaussian";
    case DatumKind::SmoothBump: return "bump";
    case DatumKind::SingularPower: return "singular";
    case DatumKind::BandLimitedRadial: return "band-radial";
    case DatumKind::RandomBandLimited: return "random";
    case DatumKind::LowFrequencyPower: return "low-power";
  }
  return "?";
}

inline DatumKind parse_datum_kind(std::string_view s) {
  for (auto k : {DatumKind::Gaussian, DatumKind::SmoothBump, DatumKind::SingularPower, DatumKind::BandLimitedRadial,
                 DatumKind::RandomBandLimited, DatumKind::LowFrequencyPower})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown datum kind '" + std::string(s) + "'");
}

struct DatumSpec {
  DatumKind kind = DatumKind::Gaussian;
  double width = 1.0;       // Gaussian width
  double radius = 1.0;      // SmoothBump support radius
  double k = 0.0;           // power for SingularPower / LowFrequencyPower
  double r_lo = 0.5;        // BandLimitedRadial annulus
  double r_hi = 1.0;
  double band_limit = 0.0;  // 0 means no filter (SmoothBump) / required otherwise
  double amplitude = 1.0;
  std::uint64_t seed = 0;

  /// Radius outside which the datum is negligible in double precision (0 for
  /// data that fill the periodic cell).
  double x_support() const {
    switch (kind) {
      case DatumKind::Gaussian: return width * std::sqrt(2.0 * 37.0);
      case DatumKind::SmoothBump: return radius;
      case DatumKind::SingularPower: return 1.0;
      case DatumKind::BandLimitedRadial: return 16.0 * std::numbers::pi / (r_hi - r_lo);
      case DatumKind::RandomBandLimited:
      case DatumKind::LowFrequencyPower: return 0.0;
    }
    return 0.0;
  }

  /// Largest |ξ| carried by the datum on grid g.
  double spectral_extent(const GridGeometry& g) const {
    const double nyq = g.nyquist();
    switch (kind) {
      case DatumKind::Gaussian: return std::min(nyq, std::sqrt(2.0 * 37.0) / width);
      case DatumKind::SmoothBump: return band_limit > 0.0 ? std::min(nyq, band_limit) : nyq;
      case DatumKind::SingularPower: return nyq;
      case DatumKind::BandLimitedRadial: return r_hi;
      case DatumKind::RandomBandLimited:
      case DatumKind::LowFrequencyPower: return band_limit;
    }
    return nyq;
  }

  void validate(const GridGeometry& g) const {
    g.validate();
    if (!std::isfinite(amplitude)) throw std::invalid_argument("datum amplitude must be finite");
    switch (kind) {
      case DatumKind::Gaussian:
        if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
        if (x_support() >= g.half_width) throw std::invalid_argument("gaussian does not fit in the domain");
        break;
      case DatumKind::SmoothBump:
        if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
        if (radius >= g.half_width) throw std::invalid_argument("bump support exceeds the domain");
        if (band_limit < 0.0) throw std::invalid_argument("band limit must be nonnegative");
        break;
      case DatumKind::SingularPower:
        if (!(k >= 0.0)) throw std::invalid_argument("singular power k must be >= 0");
        if (k >= g.n) throw std::invalid_argument("singular power needs k < n for integrability");
        if (g.half_width <= 1.0) throw std::invalid_argument("singular datum support exceeds the domain");
        break;
      case DatumKind::BandLimitedRadial:
        if (!(r_lo >= 0.0) || !(r_hi > r_lo)) throw std::invalid_argument("band annulus must satisfy 0 <= r_lo < r_hi");
        if (r_hi >= g.nyquist()) throw std::invalid_argument("band annulus exceeds the grid Nyquist frequency");
        break;
      case DatumKind::RandomBandLimited:
        if (!(band_limit > 0.0) || band_limit >= g.nyquist())
          throw std::invalid_argument("random datum band limit must lie in (0, nyquist)");
        break;
      case DatumKind::LowFrequencyPower:
        if (!(k >= 0.0) || k >= g.n) throw std::invalid_argument("low-frequency power needs 0 <= k < n");
        if (!(band_limit > 0.0) || band_limit >= g.nyquist())
          throw std::invalid_argument("low-frequency power band limit must lie in (0, nyquist)");
        break;
    }
  }
};

namespace detail {
/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
}  // namespace detail

inline SpectralField make_datum(const DatumSpec& spec, const GridPtr& grid) {
  const auto& g = grid->geometry();
  spec.validate(g);
  const double A = spec.amplitude;
  switch (spec.kind) {
    case DatumKind::Gaussian: {
      const double w2 = spec.width * spec.width;
      return SpectralField::sample(grid, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        return A * std::exp(-0.5 * r2 / w2);
      });
    }
    case DatumKind::SmoothBump: {
      auto f = SpectralField::sample(grid, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        return A * smooth_bump(std::sqrt(r2), -spec.radius, spec.radius);
      });
      if (spec.band_limit <= 0.0) return f;
      const double scale = 2.0 / spec.band_limit;
      return f.apply_multiplier([scale](double xi_sq) { return low_frequency_cutoff(scale * std::sqrt(xi_sq)); });
    }
    case DatumKind::SingularPower: {
      const double cap = g.spacing();
      return SpectralField::sample(grid, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        const double r = std::sqrt(r2);
        return r > 1.0 ? 0.0 : A * std::pow(std::max(r, cap), -spec.k);
      });
    }
    case DatumKind::BandLimitedRadial: {
      ComplexVector c(grid->spectral_size());
      const auto xi2 = grid->xi_squared();
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = A * smooth_bump(std::sqrt(xi2[i]), spec.r_lo, spec.r_hi);
      return SpectralField::from_coeffs(grid, std::move(c));
    }
    case DatumKind::RandomBandLimited: {
      std::mt19937_64 rng(spec.seed);
      ComplexVector c(grid->spectral_size());
      const auto xi2 = grid->xi_squared();
      const double b2 = spec.band_limit * spec.band_limit;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double re = 2.0 * detail::unit_uniform(rng) - 1.0;
        const double im = 2.0 * detail::unit_uniform(rng) - 1.0;
        if (xi2[i] <= b2) c[i] = A * Complex(re, im);
      }
      // Round trip through values so that self-conjugate modes are made consistent.
      auto values = grid->backward(c);
      return SpectralField::from_values(grid, std::move(values));
    }
    case DatumKind::LowFrequencyPower: {
      ComplexVector c(grid->spectral_size());
      const auto xi2 = grid->xi_squared();
      const double floor = 0.5 * g.dual_spacing();
      const double scale = 2.0 / spec.band_limit;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double r = std::max(std::sqrt(xi2[i]), floor);
        c[i] = A * std::pow(r, -spec.k) * low_frequency_cutoff(scale * r);
      }
      return SpectralField::from_coeffs(grid, std::move(c));
    }
  }
  throw std::logic_error("unhandled datum kind");
}

}  // namespace plate
