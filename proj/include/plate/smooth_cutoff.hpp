#pragma once

// Smooth transitions built from s(x) = e^{-1/x}.  The transition and its
// derivatives are evaluated with truncated Taylor arithmetic, which gives exact
// derivatives up to roundoff (no finite differences).

#include <array>
#include <cmath>
#include <cstddef>

namespace plate {

/// Truncated Taylor polynomial c_0 + c_1 h + ... + c_N h^N around a point.
/// Coefficient k equals f^{(k)}/k!.
template <std::size_t N>
struct TaylorJet {
  std::array<double, N + 1> c{};

  static TaylorJet variable(double x) {
    TaylorJet j;
    j.c[0] = x;
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }
  static TaylorJet constant(double x) {
    TaylorJet j;
    j.c[0] = x;
    return j;
  }

  double derivative(std::size_t k) const {
    double factorial = 1.0;
    for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
    return c[k] * factorial;
  }

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) {
    for (std::size_t i = 0; i <= N; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) {
    for (std::size_t i = 0; i <= N; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet r;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend TaylorJet operator*(double s, TaylorJet a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet r;
    for (std::size_t k = 0; k <= N; ++k) {
      double v = a.c[k];
      for (std::size_t j = 1; j <= k; ++j) v -= b.c[j] * r.c[k - j];
      r.c[k] = v / b.c[0];
    }
    return r;
  }
  friend TaylorJet exp(const TaylorJet& a) {
    TaylorJet r;
    r.c[0] = std::exp(a.c[0]);
    for (std::size_t k = 1; k <= N; ++k) {
      double v = 0.0;
      for (std::size_t j = 1; j <= k; ++j) v += static_cast<double>(j) * a.c[j] * r.c[k - j];
      r.c[k] = v / static_cast<double>(k);
    }
    return r;
  }
};

namespace detail {
template <std::size_t N>
TaylorJet<N> exp_inverse(const TaylorJet<N>& x) {
  // e^{-1/x} for x > 0, identically zero otherwise.
  if (x.c[0] <= 0.0) return TaylorJet<N>{};
  return exp(-1.0 * (TaylorJet<N>::constant(1.0) / x));
}
}  // namespace detail

/// Smooth step: 0 for x <= 0, 1 for x >= 1, C∞ in between.
template <std::size_t N>
TaylorJet<N> smooth_step(const TaylorJet<N>& x) {
  if (x.c[0] <= 0.0) return TaylorJet<N>{};
  if (x.c[0] >= 1.0) return TaylorJet<N>::constant(1.0);
  const auto a = detail::exp_inverse(x);
  const auto b = detail::exp_inverse(TaylorJet<N>::constant(1.0) - x);
  return a / (a + b);
}

inline double smooth_step(double x) { return smooth_step(TaylorJet<0>::constant(x)).c[0]; }

/// χ(ρ): 1 on [0,1], 0 on [2,∞), smooth and monotone in between.
inline double low_frequency_cutoff(double rho) { return smooth_step(2.0 - rho); }

/// Dyadic bump φ(ρ) = χ(ρ) − χ(2ρ), supported in [1/2, 2]; Σ_k φ(2^{-k}ρ) = 1 for ρ > 0.
inline double dyadic_bump(double rho) { return low_frequency_cutoff(rho) - low_frequency_cutoff(2.0 * rho); }

/// Profile 1 on [0, 1/2], 0 on [1, ∞) with derivatives up to order N.
template <std::size_t N>
TaylorJet<N> half_unit_cutoff(double s) {
  // 1 − S(y) = S(1 − y); the right side keeps the tail near s = 1 from cancelling to 0
  const auto x = TaylorJet<N>::variable(s);
  return smooth_step(TaylorJet<N>::constant(2.0) - 2.0 * x);
}

/// C∞ bump on [lo, hi] that equals e^{1 - 1/(1-y²)} in the centred variable y, peak 1.
inline double smooth_bump(double x, double lo, double hi) {
  if (x <= lo || x >= hi) return 0.0;
  const double y = (2.0 * x - lo - hi) / (hi - lo);
  const double d = 1.0 - y * y;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

}  // namespace plate
