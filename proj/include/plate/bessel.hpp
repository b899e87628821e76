#pragma once

// Bessel functions of the first kind J_ν(z) for ν ≥ -1/2, z ≥ 0.
//
//  * ν = ±1/2: closed forms √(2/(πz)) sin z, √(2/(πz)) cos z.
//  * z < 12 (or ν ≥ z): ascending power series.
//  * otherwise: Hankel asymptotic expansion for the fractional order in [0,1),
//    followed by forward recurrence, which is stable while the order stays below z.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace plate {

inline constexpr double kBesselSeriesSwitch = 12.0;

namespace detail {

inline double bessel_series(double nu, double z) {
  // (z/2)^ν Σ (-1)^k (z²/4)^k / (k! Γ(ν+k+1)), terms built recursively.
  const double half = 0.5 * z;
  const double lead = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  const double q = half * half;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= -q / (static_cast<double>(k) * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k * (nu + k) > q) break;
  }
  return lead * sum;
}

/// Hankel expansion; accurate for z ≥ 12 and modest order.
inline double bessel_hankel(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (static_cast<double>(k) * 8.0 * z);
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series started diverging
    last = mag;
    // k odd contributes to Q, k even to P, with alternating signs in pairs.
    const int r = k % 4;
    if (r == 1) q += term;
    else if (r == 2) p -= term;
    else if (r == 3) q -= term;
    else p += term;
    if (mag < 1e-17) break;
  }
  const double chi = z - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

inline double bessel_j(double nu, double z) {
  if (nu < -0.5) throw std::invalid_argument("bessel_j: order must be >= -1/2");
  if (z < 0.0 || !std::isfinite(z)) throw std::invalid_argument("bessel_j: argument must be finite and >= 0");
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu == -0.5) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  if (nu == 0.5) return std::sqrt(2.0 / (std::numbers::pi * z)) * std::sin(z);
  if (nu == -0.5) return std::sqrt(2.0 / (std::numbers::pi * z)) * std::cos(z);
  if (z < kBesselSeriesSwitch || nu >= z) return detail::bessel_series(nu, z);

  const double base = nu - std::floor(nu);
  const int steps = static_cast<int>(std::floor(nu));
  double prev = detail::bessel_hankel(base, z);
  if (steps == 0) return prev;
  double cur = detail::bessel_hankel(base + 1.0, z);
  for (int k = 1; k < steps; ++k) {
    const double order = base + k;
    const double next = 2.0 * order / z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace plate
