#pragma once

// Radial evaluation of K(t,·) ∗ f through the Bessel representation of the
// inverse Fourier transform, stationary-phase asymptotics of the outgoing
// branch, and the lower-bound probe behind the sharpness of the t^{-n/2+n/q}
// decay.
//
// Transform convention: f̂(ξ) = ∫ f(x) e^{-ix·ξ} dx.  For radial data,
//   (K ∗ f)(x) = (2π)^{-n/2} |x|^{1-n/2} ∫₀^∞ K̂(t,r) f̂(r) J_{(n-2)/2}(|x| r) r^{n/2} dr.

#include "plate/bessel.hpp"
#include "plate/quadrature.hpp"
#include "plate/slope_fit.hpp"
#include "plate/smooth_cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plate {

/// ⟨r²⟩ = √(1 + r⁴), the plate frequency of a radial mode.
inline double bracket_sq(double r) { return std::sqrt(1.0 + r * r * r * r); }
/// d/dr ⟨r²⟩ = 2r³/⟨r²⟩, the radial group speed.
inline double group_speed(double r) { return 2.0 * r * r * r / bracket_sq(r); }
/// d²/dr² ⟨r²⟩ = 2r²(3 + r⁴)/⟨r²⟩³.
inline double group_speed_derivative(double r) {
  const double w = bracket_sq(r);
  return 2.0 * r * r * (3.0 + r * r * r * r) / (w * w * w);
}

/// Radial Fourier data f̂(r), vanishing outside [r_lo, r_hi] with r_lo > 0.
class RadialProfile {
 public:
  RadialProfile(double r_lo, double r_hi, std::function<double(double)> shape)
      : r_lo_(r_lo), r_hi_(r_hi), shape_(std::move(shape)) {
    if (!(r_lo_ > 0.0) || !(r_hi_ > r_lo_)) throw std::invalid_argument("radial profile support must satisfy 0 < r_lo < r_hi");
  }

  /// C∞ bump of height `amplitude` on [r_lo, r_hi].
  static RadialProfile smooth_bump(double r_lo, double r_hi, double amplitude = 1.0) {
    return RadialProfile(r_lo, r_hi, [=](double r) { return amplitude * plate::smooth_bump(r, r_lo, r_hi); });
  }

  /// Polynomial bump ((r-lo)(hi-r))² normalized to height `amplitude`; only C¹ at the ends.
  static RadialProfile polynomial_bump(double r_lo, double r_hi, double amplitude = 1.0) {
    const double peak = std::pow(0.5 * (r_hi - r_lo), 4);
    return RadialProfile(r_lo, r_hi, [=](double r) {
      if (r <= r_lo || r >= r_hi) return 0.0;
      const double v = (r - r_lo) * (r_hi - r);
      return amplitude * v * v / peak;
    });
  }

  double operator()(double r) const { return (r <= r_lo_ || r >= r_hi_) ? 0.0 : shape_(r); }
  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }
  bool contains(double r) const { return r > r_lo_ && r < r_hi_; }

  /// Values on `count` equally spaced nodes covering the support.
  std::pair<std::vector<double>, std::vector<double>> sample(std::size_t count) const {
    std::vector<double> nodes(count), values(count);
    for (std::size_t i = 0; i < count; ++i) {
      nodes[i] = r_lo_ + (r_hi_ - r_lo_) * static_cast<double>(i) / static_cast<double>(count - 1);
      values[i] = (*this)(nodes[i]);
    }
    return {nodes, values};
  }

 private:
  double r_lo_;
  double r_hi_;
  std::function<double(double)> shape_;
};

inline constexpr std::size_t kDefaultPanelBudget = 20'000'000;

namespace detail {
inline void check_radial_dimension(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("radial kernels are provided for n = 1, 2, 3");
}

/// Panel width keeping the phase change of sin(t⟨r²⟩)·J(|x| r) below π/4.
inline double oscillatory_panel_width(const RadialProfile& profile, double t, double x_abs, double r) {
  const double resolve = (profile.r_hi() - profile.r_lo()) / 32.0;
  const double ahead = std::min(r + resolve, profile.r_hi());
  const double rate = t * group_speed(ahead) + x_abs;
  return rate > 0.0 ? std::min(resolve, 0.25 * std::numbers::pi / rate) : resolve;
}

template <class Integrand>
double radial_integral(const RadialProfile& profile, double t, double x_abs, Integrand&& integrand,
                       std::size_t panel_budget) {
  return integrate_adaptive_width<10>(
      integrand, profile.r_lo(), profile.r_hi(),
      [&](double r) { return oscillatory_panel_width(profile, t, x_abs, r); }, panel_budget);
}
}  // namespace detail

/// (K(t,·) ∗ f)(x) at |x| = x_abs by phase-adaptive Gauss–Legendre panels.
inline double radial_convolution(const RadialProfile& profile, double t, double x_abs, int n,
                                 std::size_t panel_budget = kDefaultPanelBudget) {
  detail::check_radial_dimension(n);
  if (!(t > 0.0)) throw std::invalid_argument("radial_convolution: t must be positive");
  if (!(x_abs > 0.0)) throw std::invalid_argument("radial_convolution: |x| must be positive");
  const double nu = 0.5 * (n - 2);
  const double half_n = 0.5 * n;
  auto integrand = [&](double r) {
    const double w = bracket_sq(r);
    return std::sin(t * w) / w * profile(r) * bessel_j(nu, x_abs * r) * std::pow(r, half_n);
  };
  const double integral = detail::radial_integral(profile, t, x_abs, integrand, panel_budget);
  return std::pow(2.0 * std::numbers::pi, -half_n) * std::pow(x_abs, 1.0 - half_n) * integral;
}

/// f(x) itself, the same representation with K̂ replaced by 1.
inline double radial_inverse_transform(const RadialProfile& profile, double x_abs, int n,
                                       std::size_t panel_budget = kDefaultPanelBudget) {
  detail::check_radial_dimension(n);
  if (!(x_abs > 0.0)) throw std::invalid_argument("radial_inverse_transform: |x| must be positive");
  const double nu = 0.5 * (n - 2);
  const double half_n = 0.5 * n;
  auto integrand = [&](double r) { return profile(r) * bessel_j(nu, x_abs * r) * std::pow(r, half_n); };
  const double integral = detail::radial_integral(profile, 0.0, x_abs, integrand, panel_budget);
  return std::pow(2.0 * std::numbers::pi, -half_n) * std::pow(x_abs, 1.0 - half_n) * integral;
}

/// I± = ∫ sin(t⟨r²⟩ ± (|x| r − (n−1)π/4)) g(r) dr with g = f̂ r^{(n−1)/2}/⟨r²⟩.
struct BranchIntegrals {
  double plus = 0.0;
  double minus = 0.0;
};

inline BranchIntegrals branch_integrals(const RadialProfile& profile, double t, double x_abs, int n,
                                        std::size_t panel_budget = kDefaultPanelBudget) {
  detail::check_radial_dimension(n);
  const double shift = 0.25 * (n - 1) * std::numbers::pi;
  auto g = [&](double r) { return profile(r) * std::pow(r, 0.5 * (n - 1)) / bracket_sq(r); };
  BranchIntegrals out;
  out.plus = detail::radial_integral(
      profile, t, x_abs, [&](double r) { return std::sin(t * bracket_sq(r) + (x_abs * r - shift)) * g(r); },
      panel_budget);
  out.minus = detail::radial_integral(
      profile, t, x_abs, [&](double r) { return std::sin(t * bracket_sq(r) - (x_abs * r - shift)) * g(r); },
      panel_budget);
  return out;
}

struct StationaryData {
  double r0 = 0.0;
  /// h(r₀) without the (n−1)π/(4t) shift: ⟨r₀²⟩ − (|x|/t) r₀.
  double h_r0 = 0.0;
  double x_over_t = 0.0;
  double residual = 0.0;
};

/// Unique root of 2r³/⟨r²⟩ = |x|/t (safeguarded Newton inside a bracket).
inline StationaryData stationary_point(double x_over_t) {
  if (!(x_over_t > 0.0) || !std::isfinite(x_over_t)) throw std::invalid_argument("stationary_point: |x|/t must be positive");
  const double v = x_over_t;
  // 2r³/⟨r²⟩ ≤ min(2r, 2r³) gives the lower bound; ⟨r²⟩ ≤ √2 max(1, r²) the upper one.
  double lo = std::max(0.5 * v, std::cbrt(0.5 * v));
  double hi = std::max(v / std::numbers::sqrt2, std::cbrt(v / std::numbers::sqrt2));
  if (hi < lo) std::swap(lo, hi);
  auto residual = [v](double r) { return group_speed(r) - v; };
  double r = 0.5 * (lo + hi);
  const double tol = 1e-14 * std::max(1.0, v);
  for (int it = 0; it < 200; ++it) {
    const double f = residual(r);
    if (std::abs(f) <= tol) break;
    if (f > 0.0) hi = r;
    else lo = r;
    const double step = f / group_speed_derivative(r);
    double next = r - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == r) break;
    r = next;
  }
  StationaryData out;
  out.r0 = r;
  out.x_over_t = v;
  out.h_r0 = bracket_sq(r) - v * r;
  out.residual = residual(r);
  return out;
}

/// t·h(r₀) = t(⟨r₀²⟩ − (|x|/t) r₀) + (n−1)π/4.
inline double stationary_phase(const StationaryData& s, double t, int n) {
  return t * s.h_r0 + 0.25 * (n - 1) * std::numbers::pi;
}

struct StationaryPhaseValue {
  bool has_contribution = false;  // false when r₀ falls outside the profile support
  double value = 0.0;
  double sine = 0.0;  // sin(t h(r₀) + π/4)
  StationaryData stationary;
};

/// Leading-order stationary-phase value of the I₋ contribution to (K ∗ f)(x):
///   (2π)^{-n/2} √(2/π) ½ |x|^{(1−n)/2} g(r₀) √(2π / (t h''(r₀))) sin(t h(r₀) + π/4).
inline StationaryPhaseValue stationary_phase_value(const RadialProfile& profile, double t, double x_abs, int n) {
  detail::check_radial_dimension(n);
  if (!(t > 0.0) || !(x_abs > 0.0)) throw std::invalid_argument("stationary_phase_value: t and |x| must be positive");
  StationaryPhaseValue out;
  out.stationary = stationary_point(x_abs / t);
  const double r0 = out.stationary.r0;
  out.sine = std::sin(stationary_phase(out.stationary, t, n) + 0.25 * std::numbers::pi);
  if (!profile.contains(r0)) return out;
  out.has_contribution = true;
  const double g = profile(r0) * std::pow(r0, 0.5 * (n - 1)) / bracket_sq(r0);
  const double amplitude = std::pow(2.0 * std::numbers::pi, -0.5 * n) * std::sqrt(2.0 / std::numbers::pi) * 0.5 *
                           std::pow(x_abs, 0.5 * (1 - n)) * g *
                           std::sqrt(2.0 * std::numbers::pi / (t * group_speed_derivative(r0)));
  out.value = amplitude * out.sine;
  return out;
}

struct OscillatoryPhase {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// |G|·λ for G = ∫_lo^hi e^{ih(y)} dy, where |h'| ≥ λ and h is convex or concave.
/// The preconditions are checked on a sample grid.
inline double vdc_bound_check(double lambda, double lo, double hi, const OscillatoryPhase& phase) {
  if (!(lambda > 0.0)) throw std::invalid_argument("vdc_bound_check: λ must be positive");
  if (!(hi > lo)) throw std::invalid_argument("vdc_bound_check: empty interval");
  constexpr int samples = 257;
  double prev = phase.derivative(lo);
  int direction = 0;
  for (int i = 0; i < samples; ++i) {
    const double y = lo + (hi - lo) * i / (samples - 1);
    const double d = phase.derivative(y);
    if (std::abs(d) < lambda * (1.0 - 1e-12))
      throw std::invalid_argument("vdc_bound_check: |h'| < λ at y = " + std::to_string(y));
    if (i > 0) {
      const int dir = d > prev ? 1 : (d < prev ? -1 : 0);
      if (dir != 0) {
        if (direction != 0 && dir != direction)
          throw std::invalid_argument("vdc_bound_check: phase is neither convex nor concave");
        direction = dir;
      }
    }
    prev = d;
  }
  auto width = [&](double y) {
    const double rate = std::max(std::abs(phase.derivative(y)), std::abs(phase.derivative(std::min(hi, y + 1e-3 * (hi - lo)))));
    return std::min(0.25 * std::numbers::pi / rate, (hi - lo) / 8.0);
  };
  const double re = integrate_adaptive_width<10>([&](double y) { return std::cos(phase.value(y)); }, lo, hi, width,
                                                 kDefaultPanelBudget);
  const double im = integrate_adaptive_width<10>([&](double y) { return std::sin(phase.value(y)); }, lo, hi, width,
                                                 kDefaultPanelBudget);
  return std::hypot(re, im) * lambda;
}

struct Annulus {
  double a = 0.0;
  double b = 0.0;
};

/// a* with a*² = 4/(√2 − 1): the annulus is nonempty exactly for a > a*.
inline double annulus_feasibility_threshold() { return 2.0 / std::sqrt(std::numbers::sqrt2 - 1.0); }

/// b = √2 a³/(4 + a²), the extreme admissible outer ratio for inner ratio a.
inline Annulus choose_annulus(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("choose_annulus: a must be positive");
  const double b = std::numbers::sqrt2 * a * a * a / (4.0 + a * a);
  if (!(b > a))
    throw std::domain_error("choose_annulus: constraint a < b = sqrt(2) a^3/(4+a^2) fails for a = " + std::to_string(a) +
                            " (b = " + std::to_string(b) + "); need a > " + std::to_string(annulus_feasibility_threshold()));
  return {a, b};
}

struct OptimalityRow {
  double t = 0.0;
  double x_star = 0.0;
  double value = 0.0;   // annulus maximum of |K ∗ f|
  double scaled = 0.0;  // value · t^{n/2}
  double sine = 0.0;    // sin(t h(r₀) + π/4) at x_star
};

struct OptimalityOptions {
  int refinements = 8;        // sub-steps tried inside a grid cell when the sine test fails
  int points_per_decade = 40; // density of the candidate grid, used for refinement spacing
  std::size_t panel_budget = kDefaultPanelBudget;
};

/// Geometric grid with `per_decade` points per decade on [t_lo, t_hi].
inline std::vector<double> geometric_grid(double t_lo, double t_hi, int per_decade) {
  if (!(t_lo > 0.0) || !(t_hi >= t_lo) || per_decade < 1) throw std::invalid_argument("geometric_grid: bad range");
  std::vector<double> out;
  const double decades = std::log10(t_hi / t_lo);
  const int count = static_cast<int>(std::floor(decades * per_decade + 1e-9));
  for (int i = 0; i <= count; ++i) out.push_back(t_lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  return out;
}

class EmptySelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
/// Maximizer of |K∗f| over at < |x| < bt: scan with the stationary-phase value,
/// then polish with the quadrature oracle around the best candidate.
inline std::optional<OptimalityRow> annulus_maximum(const RadialProfile& profile, const Annulus& ann, double t, int n,
                                                    std::size_t panel_budget) {
  const double r_top = stationary_point(ann.b).r0;
  const double step = std::numbers::pi / (16.0 * r_top);
  const double x_lo = ann.a * t, x_hi = ann.b * t;
  double best_x = 0.0, best_abs = -1.0;
  for (double x = x_lo + 0.5 * step; x < x_hi; x += step) {
    const auto sp = stationary_phase_value(profile, t, x, n);
    if (sp.has_contribution && std::abs(sp.value) > best_abs) {
      best_abs = std::abs(sp.value);
      best_x = x;
    }
  }
  if (best_abs <= 0.0) return std::nullopt;

  double polished_x = best_x, polished_abs = -1.0;
  for (int j = -3; j <= 3; ++j) {
    const double x = best_x + 0.5 * j * step;
    if (x <= x_lo || x >= x_hi) continue;
    const double v = radial_convolution(profile, t, x, n, panel_budget);
    if (std::abs(v) > polished_abs) {
      polished_abs = std::abs(v);
      polished_x = x;
    }
  }
  // Parabolic refinement through the best sample and its neighbours.
  const double h = 0.5 * step;
  if (polished_x - h > x_lo && polished_x + h < x_hi) {
    const double fm = std::abs(radial_convolution(profile, t, polished_x - h, n, panel_budget));
    const double fp = std::abs(radial_convolution(profile, t, polished_x + h, n, panel_budget));
    const double denom = fm - 2.0 * polished_abs + fp;
    if (denom < 0.0) {
      const double shift = 0.5 * h * (fm - fp) / denom;
      if (std::abs(shift) < h) {
        const double x = polished_x + shift;
        const double v = radial_convolution(profile, t, x, n, panel_budget);
        if (std::abs(v) > polished_abs) {
          polished_abs = std::abs(v);
          polished_x = x;
        }
      }
    }
  }
  OptimalityRow row;
  row.t = t;
  row.x_star = polished_x;
  row.value = polished_abs;
  row.scaled = polished_abs * std::pow(t, 0.5 * n);
  row.sine = stationary_phase_value(profile, t, polished_x, n).sine;
  return row;
}
}  // namespace detail

/// Tries t and up to options.refinements sub-steps inside its grid cell; returns
/// the first row whose sine factor is at least 1/2.
inline std::optional<OptimalityRow> optimality_row(const RadialProfile& profile, const Annulus& ann, double t, int n,
                                                   const OptimalityOptions& options = {}) {
  if (!(ann.a > 0.0) || !(ann.b > ann.a)) throw std::invalid_argument("optimality_row: invalid annulus");
  const double cell = std::pow(10.0, 1.0 / options.points_per_decade);
  for (int j = 0; j < options.refinements; ++j) {
    const double tj = t * std::pow(cell, static_cast<double>(j) / options.refinements);
    auto row = detail::annulus_maximum(profile, ann, tj, n, options.panel_budget);
    if (!row) return std::nullopt;  // no stationary contribution at this time
    if (row->sine >= 0.5) return row;
  }
  return std::nullopt;
}

inline void check_selection(const std::vector<OptimalityRow>& rows) {
  if (rows.empty())
    throw EmptySelectionError(
        "optimality_sequence: no time satisfied sin(t h(r0) + pi/4) >= 1/2 with a stationary contribution "
        "(grid too sparse or profile vanishes on the r0 range)");
}

/// Selects times t_k on (or just after) the candidate grid where the sine factor at
/// the annulus maximizer is at least 1/2, and records the annulus maximum there.
inline std::vector<OptimalityRow> optimality_sequence(const RadialProfile& profile, const Annulus& ann,
                                                      const std::vector<double>& t_grid, int n,
                                                      const OptimalityOptions& options = {}) {
  std::vector<OptimalityRow> rows;
  for (double t : t_grid)
    if (auto row = optimality_row(profile, ann, t, n, options)) rows.push_back(*row);
  check_selection(rows);
  return rows;
}

}  // namespace plate
