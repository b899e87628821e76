#pragma once

// Linear decay experiments: evolve u₀ = 0, u₁ = datum, record L^q norms on a
// time grid, fit log-log slopes and compare with the exponent engine.

#include "plate/datum.hpp"
#include "plate/multiplier_theory.hpp"
#include "plate/norms.hpp"
#include "plate/parallel.hpp"
#include "plate/propagator.hpp"
#include "plate/slope_fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace plate {

struct DecaySeries {
  std::vector<double> times;
  std::map<Rational, std::vector<double>> norms;  // keyed by 1/q
  std::map<Rational, double> datum_norms;          // keyed by 1/p
};

class WraparoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Geometric time grid with `count` points on [t_lo, t_hi].
inline std::vector<double> log_spaced_times(double t_lo, double t_hi, std::size_t count) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || count < 2) throw std::invalid_argument("log_spaced_times: bad range");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i)
    t[i] = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / static_cast<double>(count - 1));
  return t;
}

/// Log-spaced times moved to the nearest (m + 1/2)π.  The low-frequency part of
/// K(t,·) carries the factor sin t from ω(0) = 1; locking the phase removes that
/// beat from large-time slope fits.  Duplicates are dropped.
inline std::vector<double> phase_locked_times(double t_lo, double t_hi, std::size_t count) {
  std::vector<double> out;
  for (double t : log_spaced_times(t_lo, t_hi, count)) {
    const double m = std::max(0.0, std::round(t / std::numbers::pi - 0.5));
    const double locked = (m + 0.5) * std::numbers::pi;
    if (out.empty() || locked > out.back()) out.push_back(locked);
  }
  return out;
}

inline void check_wraparound(const DatumSpec& datum, const GridGeometry& g, double t_max) {
  const double band = datum.spectral_extent(g);
  if (!satisfies_wraparound_rule(g, datum.x_support(), band, t_max))
    throw WraparoundError("domain half width " + std::to_string(g.half_width) + " is below the wrap-around bound " +
                          std::to_string(wraparound_half_width(datum.x_support(), band, t_max)) + " for t_max = " +
                          std::to_string(t_max));
}

/// Evolves the datum as u₁ (u₀ = 0) and records ‖u(t)‖_q for every pair.
inline DecaySeries run_decay(const DatumSpec& datum, const GridPtr& grid, const std::vector<LebesguePair>& pairs,
                             const std::vector<double>& times, bool enforce_wraparound = true, unsigned jobs = 1) {
  if (times.empty()) throw std::invalid_argument("run_decay: empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw std::invalid_argument("run_decay: times must be positive");
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("run_decay: times must increase");
  }
  if (enforce_wraparound) check_wraparound(datum, grid->geometry(), times.back());
  const auto u1 = make_datum(datum, grid);
  DecaySeries series;
  series.times = times;
  std::set<Rational> q_invs;
  for (const auto& pr : pairs) {
    q_invs.insert(pr.q_inv());
    if (!series.datum_norms.count(pr.p_inv())) series.datum_norms[pr.p_inv()] = lp_norm(u1, pr.p_inv());
  }
  for (const auto& q : q_invs) series.norms[q].assign(times.size(), 0.0);
  parallel_for(times.size(), jobs, [&](std::size_t i) {
    const auto u = solve_from_rest(u1, times[i]);
    for (const auto& q : q_invs) series.norms.at(q)[i] = lp_norm(u, q);
  });
  return series;
}

struct SlopeFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t samples = 0;
  /// Fit of log‖u‖ − γ log log t, present when γ ≠ 0.
  std::optional<LineFit> with_log_factor;
};

inline constexpr std::size_t kMinFitSamples = 8;

/// Slope fit of log y against log t on samples with window_lo ≤ t ≤ window_hi.
inline SlopeFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values, double window_lo,
                              double window_hi, double gamma = 0.0) {
  if (times.size() != values.size()) throw std::invalid_argument("fit: size mismatch");
  if (!(window_hi > window_lo)) throw std::invalid_argument("fit: degenerate window");
  std::vector<double> lx, ly, ly_log;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t < window_lo || t > window_hi) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) throw std::invalid_argument("fit: non-positive sample");
    lx.push_back(std::log(t));
    ly.push_back(std::log(values[i]));
    if (gamma != 0.0) {
      if (!(t > 1.0)) throw std::invalid_argument("fit: log factor needs t > 1");
      ly_log.push_back(ly.back() - gamma * std::log(std::log(t)));
    }
  }
  if (lx.size() < kMinFitSamples)
    throw std::invalid_argument("fit: need at least " + std::to_string(kMinFitSamples) + " samples in the window, got " +
                                std::to_string(lx.size()));
  const auto line = least_squares_line(lx, ly);
  SlopeFit fit;
  fit.exponent = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.samples = lx.size();
  if (gamma != 0.0) fit.with_log_factor = least_squares_line(lx, ly_log);
  return fit;
}

inline SlopeFit fit_slope(const DecaySeries& series, const Rational& q_inv, double window_lo, double window_hi,
                          const Rational& gamma = 0) {
  auto it = series.norms.find(q_inv);
  if (it == series.norms.end()) throw std::invalid_argument("fit_slope: 1/q = " + to_string(q_inv) + " not recorded");
  return fit_power_law(series.times, it->second, window_lo, window_hi, to_double(gamma));
}

enum class Verdict { Consistent, UpperBoundSlack, Violation };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Consistent: return "Consistent";
    case Verdict::UpperBoundSlack: return "UpperBoundSlack";
    case Verdict::Violation: return "Violation";
  }
  return "?";
}

inline Verdict verdict(double fitted, double predicted, double tol) {
  if (std::abs(fitted - predicted) <= tol) return Verdict::Consistent;
  return fitted < predicted ? Verdict::UpperBoundSlack : Verdict::Violation;
}

inline Verdict verdict(const SlopeFit& fit, const TheoryPrediction& prediction, double tol, bool large_time = true) {
  return verdict(fit.exponent,
                 to_double(large_time ? prediction.large_time_exponent : prediction.small_time_exponent), tol);
}

/// Theory envelope t^{small} on (0,1], t^{large}(log(e+t))^γ beyond.
inline double theory_envelope(const TheoryPrediction& pr, double t) {
  if (t <= 1.0) return std::pow(t, to_double(pr.small_time_exponent));
  return std::pow(t, to_double(pr.large_time_exponent)) * std::pow(std::log(std::numbers::e + t), to_double(pr.gamma));
}

/// Smallest C with ‖u(t)‖_q ≤ C ‖u₁‖_p envelope(t) over the recorded times.
inline double envelope_constant(const DecaySeries& series, const TheoryPrediction& pr) {
  const auto& norms = series.norms.at(pr.pair.q_inv());
  const double datum = series.datum_norms.at(pr.pair.p_inv());
  double c = 0.0;
  for (std::size_t i = 0; i < series.times.size(); ++i)
    c = std::max(c, norms[i] / (datum * theory_envelope(pr, series.times[i])));
  return c;
}

/// ‖K(t,·) ∗ f_B‖_q / ‖f_B‖_p for f_B = e^{-B²|x|²/2}, whose spectrum spreads
/// as B grows.  For pairs with d_pl > 1 the ratio grows with B; modulating a
/// fixed-width packet would not show this, since its spread does not depend on ξ₀.
struct PacketRatio {
  double bandwidth = 0.0;
  double ratio = 0.0;
};

inline std::vector<PacketRatio> high_frequency_loss(const LebesguePair& pair, const GridPtr& grid, double t,
                                                    const std::vector<double>& bandwidths) {
  if (!(t > 0.0)) throw std::invalid_argument("high_frequency_loss: t must be positive");
  const auto& g = grid->geometry();
  std::vector<PacketRatio> out;
  for (double B : bandwidths) {
    if (!(B > 0.0)) throw std::invalid_argument("high_frequency_loss: bandwidth must be positive");
    if (6.0 * B >= g.nyquist()) throw std::invalid_argument("high_frequency_loss: bandwidth too close to Nyquist");
    if (8.6 / B >= g.half_width) throw std::invalid_argument("high_frequency_loss: packet does not fit the domain");
    const auto f = SpectralField::sample(grid, [B](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return std::exp(-0.5 * B * B * r2);
    });
    const auto u = solve_from_rest(f, t);
    out.push_back({B, lp_norm(u, pair.q_inv()) / lp_norm(f, pair.p_inv())});
  }
  return out;
}

}  // namespace plate
