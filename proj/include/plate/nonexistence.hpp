#pragma once

// Test-function bookkeeping for nonexistence of weak solutions with data
// |x|^{-k} 1_{|x|≤1}: exponent window, datum pairing scaling and the Hölder
// chain  |∫∫ u Lψ_τ| ≤ H(τ) I(τ)^{1/α},  L = ∂²_t + Δ² + 1.

#include "plate/multiplier_theory.hpp"
#include "plate/quadrature.hpp"
#include "plate/smooth_cutoff.hpp"
#include "plate/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plate {

/// η(s) and φ(x) = η(|x|) with 1 on [0,1/2], 0 on [1,∞), and their scaled product
/// ψ_τ(t,x) = η(t/τ) φ(x/τ^{1/2}).
class TestFunctionPair {
 public:
  TestFunctionPair(int n, double tau) : n_(n), tau_(tau) {
    if (n < 1) throw std::invalid_argument("test function: n must be >= 1");
    if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("test function: tau must lie in (0,1]");
  }

  int n() const { return n_; }
  double tau() const { return tau_; }

  static double eta(double s) { return half_unit_cutoff<0>(s).c[0]; }
  static double eta_dd(double s) { return half_unit_cutoff<2>(s).derivative(2); }
  static double phi(double r) { return half_unit_cutoff<0>(r).c[0]; }

  /// Δ²φ for the radial profile, r = |x|.
  double bilaplacian_phi(double r) const {
    if (r <= 0.5 || r >= 1.0) return 0.0;  // φ is constant off the transition
    const auto j = half_unit_cutoff<4>(r);
    const double d1 = j.derivative(1), d2 = j.derivative(2), d3 = j.derivative(3), d4 = j.derivative(4);
    const double m = n_ - 1.0;
    return d4 + 2.0 * m / r * d3 + m * (n_ - 3.0) / (r * r) * d2 - m * (n_ - 3.0) / (r * r * r) * d1;
  }

  double psi(double t, double r) const { return eta(t / tau_) * phi(r / std::sqrt(tau_)); }

  /// (∂²_t + Δ² + 1) ψ_τ at (t, |x| = r).
  double apply_operator(double t, double r) const {
    const double s = t / tau_, y = r / std::sqrt(tau_);
    const double e = eta(s), p = phi(y);
    return (eta_dd(s) * p + e * bilaplacian_phi(y)) / (tau_ * tau_) + e * p;
  }

 private:
  int n_;
  double tau_;
};

/// max |η''| / η^{1/r} and max |Δ²φ| / φ^{1/r} over `samples` points of the
/// transition region.  Points where the cutoff underflows to 0 are skipped.
struct CutoffPowerConstants {
  double eta = 0.0;
  double phi = 0.0;
};

inline CutoffPowerConstants cutoff_power_constants(double r, int n, int samples = 20001) {
  if (!(r > 1.0)) throw std::invalid_argument("cutoff power: r must exceed 1");
  const TestFunctionPair tf(n, 1.0);
  CutoffPowerConstants c;
  for (int i = 1; i < samples; ++i) {
    const double s = 0.5 + 0.5 * i / samples;
    const double e = TestFunctionPair::eta(s);
    if (e <= 0.0) {
      if (TestFunctionPair::eta_dd(s) != 0.0 && std::abs(TestFunctionPair::eta_dd(s)) > 1e-250)
        throw std::runtime_error("cutoff power: eta'' nonzero where eta vanishes");
      continue;
    }
    c.eta = std::max(c.eta, std::abs(TestFunctionPair::eta_dd(s)) / std::pow(e, 1.0 / r));
    c.phi = std::max(c.phi, std::abs(tf.bilaplacian_phi(s)) / std::pow(e, 1.0 / r));
  }
  return c;
}

enum class NonexistenceOutcome { ForcesLambdaZero, Inconclusive, HypothesisViolated };

inline std::string_view to_string(NonexistenceOutcome v) {
  switch (v) {
    case NonexistenceOutcome::ForcesLambdaZero: return "ForcesLambdaZero";
    case NonexistenceOutcome::Inconclusive: return "Inconclusive";
    case NonexistenceOutcome::HypothesisViolated: return "HypothesisViolated";
  }
  return "?";
}

struct NonexistenceVerdict {
  int n = 0;
  Rational m;
  Rational alpha;
  std::optional<Rational> threshold;  // (n+2m)/(n−2m) when n > 2m
  Rational window_lo;                 // 2(α+1)/(α−1)
  Rational window_hi;                 // n/m
  std::optional<Rational> k;          // window midpoint when nonempty
  std::optional<Rational> exponent;   // −2α′ + 1 + k/2
  NonexistenceOutcome outcome = NonexistenceOutcome::Inconclusive;
};

inline NonexistenceVerdict exponent_conditions(int n, const Rational& m, const Rational& alpha) {
  if (n < 1) throw std::invalid_argument("exponent_conditions: n must be >= 1");
  if (m < 1 || m > 2) throw std::invalid_argument("exponent_conditions: m must lie in [1,2]");
  if (alpha <= 1) throw std::invalid_argument("exponent_conditions: alpha must exceed 1");
  NonexistenceVerdict v;
  v.n = n;
  v.m = m;
  v.alpha = alpha;
  v.window_lo = 2 * (alpha + 1) / (alpha - 1);
  v.window_hi = Rational(n) / m;
  if (Rational(n) <= 2 * m) {
    v.outcome = NonexistenceOutcome::HypothesisViolated;
    return v;
  }
  v.threshold = (n + 2 * m) / (n - 2 * m);
  if (v.window_lo < v.window_hi) {
    v.k = (v.window_lo + v.window_hi) / 2;
    const Rational alpha_conj = alpha / (alpha - 1);
    v.exponent = -2 * alpha_conj + 1 + *v.k / 2;
    v.outcome = *v.exponent > 0 ? NonexistenceOutcome::ForcesLambdaZero : NonexistenceOutcome::Inconclusive;
  } else {
    v.outcome = NonexistenceOutcome::Inconclusive;
  }
  return v;
}

/// Surface area of the unit sphere in ℝⁿ.
inline double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// ∫ |x|^{-k} 1_{|x|≤1} φ(x/τ^{1/2}) dx by radial quadrature.
inline double datum_pairing(double k, int n, double tau) {
  if (n < 1) throw std::invalid_argument("datum_pairing: n must be >= 1");
  if (!(k >= 0.0) || k >= n) throw std::invalid_argument("datum_pairing: need 0 <= k < n");
  if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("datum_pairing: tau must lie in (0,1]");
  const double R = std::sqrt(tau);
  const double nu = n - 1.0 - k;  // > -1
  // φ(x/R) = 1 on the plateau |x| ≤ R/2, where the radial integral is exact.
  const double plateau = std::pow(0.5 * R, nu + 1.0) / (nu + 1.0);
  std::vector<double> breaks(65);
  for (int i = 0; i <= 64; ++i) breaks[i] = R * (0.5 + 0.5 * i / 64.0);
  const double transition =
      integrate_panels<20>([&](double r) { return std::pow(r, nu) * TestFunctionPair::phi(r / R); }, breaks);
  return sphere_area(n) * (plateau + transition);
}

/// Grid realization: Riemann sum over the lattice hℤⁿ of the capped datum
/// max(|x|, h)^{-k} 1_{|x|≤1} times φ_τ.  Requires τ^{1/2} ≥ 32 h.
inline double datum_pairing_grid(double k, int n, double tau, double h) {
  if (n < 1 || n > 3) throw std::invalid_argument("datum_pairing_grid: n must be 1, 2 or 3");
  if (!(k >= 0.0) || k >= n) throw std::invalid_argument("datum_pairing_grid: need 0 <= k < n");
  if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("datum_pairing_grid: tau must lie in (0,1]");
  const double R = std::sqrt(tau);
  if (R < 32.0 * h) throw std::invalid_argument("datum_pairing_grid: tau^{1/2} spans fewer than 32 cells");
  const long m = static_cast<long>(std::floor(R / h));
  double sum = 0.0;
  std::vector<long> idx(n, -m);
  for (;;) {
    double r2 = 0.0;
    for (long j : idx) r2 += static_cast<double>(j * j) * h * h;
    const double r = std::sqrt(r2);
    if (r < R) sum += std::pow(std::max(r, h), -k) * TestFunctionPair::phi(r / R);
    int d = 0;
    while (d < n && ++idx[d] > m) idx[d++] = -m;
    if (d == n) break;
  }
  return sum * std::pow(h, n);
}

/// Fields u(t_j, ·) on a common grid at uniformly spaced times t_j = j·dt, j ≥ 0.
struct SpaceTimeSamples {
  double dt = 0.0;
  std::vector<SpectralField> slices;
};

struct WeakPairing {
  double lhs = 0.0;             // ∫∫ u Lψ_τ
  double I = 0.0;               // ∫∫ |u|^α ψ_τ
  double holder_factor = 0.0;   // H(τ) = (∫∫ |Lψ_τ|^{α'} ψ_τ^{-α'/α})^{1/α'}
};

/// Discrete pairing with trapezoid weights in t and Riemann sums in x.  The
/// discrete Hölder inequality gives |lhs| ≤ H I^{1/α} exactly on the same nodes.
/// Δ²φ has very fine structure near |x| = τ^{1/2}; lhs is accurate to ~1e-5 only
/// once τ^{1/2} spans about 200 cells (about 6% off at 100 cells).
inline WeakPairing weak_pairing(const SpaceTimeSamples& u, double tau, double alpha) {
  if (u.slices.empty() || !(u.dt > 0.0)) throw std::invalid_argument("weak_pairing: empty samples");
  if (!(alpha > 1.0)) throw std::invalid_argument("weak_pairing: alpha must exceed 1");
  const auto& grid = *u.slices.front().grid();
  const auto& g = grid.geometry();
  const TestFunctionPair tf(g.n, tau);
  const double t_cover = u.dt * static_cast<double>(u.slices.size() - 1);
  if (t_cover < tau * (1.0 - 1e-12))
    throw std::invalid_argument("weak_pairing: samples cover t <= " + std::to_string(t_cover) + " < tau");
  if (g.half_width <= std::sqrt(tau)) throw std::invalid_argument("weak_pairing: grid does not cover |x| <= tau^{1/2}");
  const double alpha_conj = alpha / (alpha - 1.0);
  const double cell = g.cell_volume();
  WeakPairing out;
  double holder = 0.0;
  std::vector<double> radius(grid.size());
  for (std::size_t i = 0; i < radius.size(); ++i) radius[i] = grid.radius(i);
  for (std::size_t j = 0; j < u.slices.size(); ++j) {
    const double t = u.dt * static_cast<double>(j);
    if (t > tau) break;
    if (!u.slices[j].same_geometry(u.slices.front())) throw std::invalid_argument("weak_pairing: mixed geometries");
    const double wt = (j == 0 ? 0.5 : 1.0) * u.dt * cell;
    const auto values = u.slices[j].values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double psi = tf.psi(t, radius[i]);
      if (psi <= 0.0) continue;
      const double L = tf.apply_operator(t, radius[i]);
      out.lhs += wt * values[i] * L;
      out.I += wt * std::pow(std::abs(values[i]), alpha) * psi;
      holder += wt * std::pow(std::abs(L), alpha_conj) * std::pow(psi, -alpha_conj / alpha);
    }
  }
  out.holder_factor = std::pow(holder, 1.0 / alpha_conj);
  return out;
}

/// τ^{−2 + (1+n/2)/α′}, the scaling of H(τ).
inline double holder_scaling(double tau, int n, double alpha) {
  const double alpha_conj = alpha / (alpha - 1.0);
  return std::pow(tau, -2.0 + (1.0 + 0.5 * n) / alpha_conj);
}

}  // namespace plate
