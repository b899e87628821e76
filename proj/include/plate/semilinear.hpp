#pragma once

// u_tt + Δ²u + u = κ|u|^α by exponential (Lawson) integrators: the linear part
// is the exact rotation of propagator.hpp, the nonlinear term enters through
// variation of constants with stages carried by the exact flow.
//
//  Trapezoid: Lawson–Heun, second order.
//  Simpson:   Lawson–RK4, fourth order.  Its weights 1/6, 4/6, 1/6 on the
//             endpoint and the (doubled) midpoint stage are Simpson's rule.

#include "plate/datum.hpp"
#include "plate/decay_lab.hpp"
#include "plate/multiplier_theory.hpp"
#include "plate/norms.hpp"
#include "plate/propagator.hpp"
#include "plate/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plate {

enum class DuhamelQuadrature { Trapezoid, Simpson };

inline std::string_view to_string(DuhamelQuadrature q) {
  return q == DuhamelQuadrature::Trapezoid ? "trapezoid" : "simpson";
}

inline DuhamelQuadrature parse_quadrature(std::string_view s) {
  if (s == "trapezoid") return DuhamelQuadrature::Trapezoid;
  if (s == "simpson") return DuhamelQuadrature::Simpson;
  throw std::invalid_argument("unknown quadrature '" + std::string(s) + "' (trapezoid|simpson)");
}

enum class RunStatus { CompletedGlobal, BlowupDetected, QuadratureFailure };

inline std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::CompletedGlobal: return "CompletedGlobal";
    case RunStatus::BlowupDetected: return "BlowupDetected";
    case RunStatus::QuadratureFailure: return "QuadratureFailure";
  }
  return "?";
}

class NonFiniteStage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// 2/3-rule mask: keeps modes with |k_d| ≤ N/3 on every axis.
inline std::vector<char> dealias_mask(const Grid& grid) {
  const auto& g = grid.geometry();
  const long limit = static_cast<long>(g.points_per_axis) / 3;
  std::vector<char> mask(grid.spectral_size(), 1);
  for (std::size_t i = 0; i < mask.size(); ++i)
    for (int d = 0; d < g.n; ++d)
      if (std::abs(grid.wavenumber_index(i, d)) > limit) {
        mask[i] = 0;
        break;
      }
  return mask;
}

struct PhaseState {
  ComplexVector u;
  ComplexVector v;  // u_t
};

inline void flow(const Grid& grid, PhaseState& s, double dt) { rotate(grid.xi_squared(), s.u, s.v, dt); }

/// Coefficients of the de-aliased κ|u|^α; also reports sup |u| on the grid.
inline ComplexVector power_term(const Grid& grid, std::span<const Complex> u_hat, double alpha, double coefficient,
                                const std::vector<char>& mask, double* sup = nullptr) {
  auto values = grid.backward(u_hat);
  double m = 0.0;
  for (double& x : values) {
    if (!std::isfinite(x)) throw NonFiniteStage("non-finite value in a stage");
    m = std::max(m, std::abs(x));
    x = coefficient == 0.0 ? 0.0 : coefficient * std::pow(std::abs(x), alpha);
  }
  if (sup) *sup = m;
  auto c = grid.forward(values);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!mask[i]) c[i] = Complex{};
    else if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) throw NonFiniteStage("non-finite nonlinear term");
  }
  return c;
}

inline void axpy(ComplexVector& y, double a, const ComplexVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// One Lawson step of size dt on the coefficient pair.  F(U) = (0, N(u)).
inline void lawson_step(const Grid& grid, PhaseState& s, double dt, double alpha, double coefficient,
                        DuhamelQuadrature quad, const std::vector<char>& mask, double* sup_at_start = nullptr) {
  const auto k1 = power_term(grid, s.u, alpha, coefficient, mask, sup_at_start);
  if (quad == DuhamelQuadrature::Trapezoid) {
    // U* = E(h)(U + h F(U));  U⁺ = E(h)U + h/2 (E(h)F(U) + F(U*))
    PhaseState a{s.u, s.v};
    axpy(a.v, dt, k1);
    flow(grid, a, dt);
    const auto k2 = power_term(grid, a.u, alpha, coefficient, mask);
    axpy(s.v, 0.5 * dt, k1);
    flow(grid, s, dt);
    axpy(s.v, 0.5 * dt, k2);
    return;
  }
  const double h2 = 0.5 * dt;
  // a = E(h/2)(U + h/2 k1)
  PhaseState a{s.u, s.v};
  axpy(a.v, h2, k1);
  flow(grid, a, h2);
  const auto k2 = power_term(grid, a.u, alpha, coefficient, mask);
  // b = E(h/2)U + h/2 k2
  PhaseState b{s.u, s.v};
  flow(grid, b, h2);
  PhaseState half = b;  // E(h/2)U, reused for c
  axpy(b.v, h2, k2);
  const auto k3 = power_term(grid, b.u, alpha, coefficient, mask);
  // c = E(h/2)(E(h/2)U + h k3)
  PhaseState c = half;
  axpy(c.v, dt, k3);
  flow(grid, c, h2);
  const auto k4 = power_term(grid, c.u, alpha, coefficient, mask);
  // U⁺ = E(h/2)[E(h/2)(U + h/6 k1) + h/3 (k2 + k3)] + h/6 k4
  axpy(s.v, dt / 6.0, k1);
  flow(grid, s, h2);
  axpy(s.v, dt / 3.0, k2);
  axpy(s.v, dt / 3.0, k3);
  flow(grid, s, h2);
  axpy(s.v, dt / 6.0, k4);
}

inline PhaseState to_phase(const EvolutionState& st) {
  return {ComplexVector(st.u.coeffs().begin(), st.u.coeffs().end()),
          ComplexVector(st.ut.coeffs().begin(), st.ut.coeffs().end())};
}

inline EvolutionState from_phase(const GridPtr& grid, double t, const PhaseState& s) {
  return EvolutionState(t, SpectralField::from_coeffs(grid, s.u), SpectralField::from_coeffs(grid, s.v));
}

}  // namespace detail

/// Pointwise κ|u|^α followed by the 2/3 de-aliasing rule.
inline SpectralField nonlinearity(const SpectralField& u, double alpha, double coefficient = 1.0) {
  if (!(alpha > 1.0)) throw std::invalid_argument("nonlinearity: alpha must exceed 1");
  const auto mask = detail::dealias_mask(*u.grid());
  return SpectralField::from_coeffs(u.grid(), detail::power_term(*u.grid(), u.coeffs(), alpha, coefficient, mask));
}

/// One exponential-integrator step; coefficient 0 reduces to the exact linear flow.
/// Throws NonFiniteStage when a stage is not finite.
inline EvolutionState duhamel_step(const EvolutionState& state, double dt, double alpha, DuhamelQuadrature quad,
                                   double coefficient = 1.0) {
  if (!(dt > 0.0)) throw std::invalid_argument("duhamel_step: dt must be positive");
  if (!(alpha > 1.0)) throw std::invalid_argument("duhamel_step: alpha must exceed 1");
  const auto& grid = state.u.grid();
  auto s = detail::to_phase(state);
  detail::lawson_step(*grid, s, dt, alpha, coefficient, quad, detail::dealias_mask(*grid));
  return detail::from_phase(grid, state.t + dt, s);
}

struct SemilinearConfig {
  double alpha = 2.0;
  GridGeometry geometry;
  std::optional<DatumSpec> u0;  // absent: u₀ ≡ 0
  DatumSpec u1;
  double epsilon = 1.0;          // scales both data
  double dt = 0.05;
  double horizon = 1.0;
  DuhamelQuadrature quadrature = DuhamelQuadrature::Trapezoid;
  double blowup_threshold = 0.0;  // 0: 1e6 × initial sup of the data
  double coefficient = 1.0;       // κ; 0 disables the nonlinearity
  std::vector<double> sample_times;  // empty: 10 per decade from dt to horizon
  std::vector<Rational> q_invs{Rational(0), Rational(1, 2)};
  bool enforce_wraparound = true;
  bool keep_snapshots = false;  // store u at every sample time

  void validate() const {
    geometry.validate();
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (blowup_threshold < 0.0) throw std::invalid_argument("blowup threshold must be >= 0");
    if (q_invs.empty()) throw std::invalid_argument("at least one q is required");
    for (const auto& q : q_invs)
      if (q < 0 || q > 1) throw std::invalid_argument("1/q must lie in [0,1]");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
      if (!(sample_times[i] > 0.0) || sample_times[i] > horizon)
        throw std::invalid_argument("sample times must lie in (0, horizon]");
      if (i > 0 && !(sample_times[i] > sample_times[i - 1])) throw std::invalid_argument("sample times must increase");
    }
    if (enforce_wraparound) {
      check_wraparound(u1, geometry, horizon);
      if (u0) check_wraparound(*u0, geometry, horizon);
    }
  }

  std::vector<double> resolved_sample_times() const {
    if (!sample_times.empty()) return sample_times;
    const double lo = std::min(dt, horizon);
    std::vector<double> out;
    if (horizon > lo) {
      const auto count = static_cast<std::size_t>(std::ceil(10.0 * std::log10(horizon / lo))) + 1;
      out = log_spaced_times(lo, horizon, std::max<std::size_t>(count, 2));
    } else {
      out = {horizon};
    }
    out.back() = horizon;
    return out;
  }
};

/// Weight exponent w(q) = (n/4)(1 − 1/q) − (n/4)β(1,q) and γ(1,q).
inline std::pair<double, double> decay_weight(const Rational& q_inv, int n) {
  const LebesguePair pair(1, q_inv);
  const Rational w = Rational(n, 4) * (1 - q_inv) - Rational(n, 4) * beta(pair);
  return {to_double(w), to_double(gamma(pair))};
}

/// (1+t)^{w(q)} log(e+t)^{−γ} ‖u(t)‖_q.
inline double weighted_norm(double norm, double t, const Rational& q_inv, int n) {
  const auto [w, g] = decay_weight(q_inv, n);
  return std::pow(1.0 + t, w) * std::pow(std::log(std::numbers::e + t), -g) * norm;
}

struct RunRecord {
  RunStatus status = RunStatus::CompletedGlobal;
  double final_time = 0.0;
  DecaySeries series;                               // norms keyed by 1/q
  std::map<Rational, std::vector<double>> weighted;  // weighted norms per sample
  std::map<Rational, double> weighted_sup;           // running sup over samples
  std::vector<SpectralField> snapshots;              // filled when keep_snapshots is set
  std::string message;
};

namespace detail {
inline std::pair<SpectralField, SpectralField> initial_fields(const SemilinearConfig& cfg, const GridPtr& grid) {
  auto u1 = cfg.epsilon * make_datum(cfg.u1, grid);
  auto u0 = cfg.u0 ? cfg.epsilon * make_datum(*cfg.u0, grid) : SpectralField::zero(grid);
  return {std::move(u0), std::move(u1)};
}

inline void record_sample(RunRecord& rec, const SemilinearConfig& cfg, const SpectralField& u, double t) {
  rec.series.times.push_back(t);
  for (const auto& q : cfg.q_invs) {
    const double norm = lp_norm(u, q);
    rec.series.norms[q].push_back(norm);
    const double w = weighted_norm(norm, t, q, cfg.geometry.n);
    rec.weighted[q].push_back(w);
    rec.weighted_sup[q] = std::max(rec.weighted_sup[q], w);
  }
}
}  // namespace detail

/// Marches to the horizon, landing exactly on every sample time.
inline RunRecord run(const SemilinearConfig& cfg) {
  cfg.validate();
  const auto grid = Grid::make(cfg.geometry);
  const auto [u0, u1] = detail::initial_fields(cfg, grid);
  const auto mask = detail::dealias_mask(*grid);
  double threshold = cfg.blowup_threshold;
  if (threshold == 0.0) {
    const double initial = std::max(lp_norm(u0, Rational(0)), lp_norm(u1, Rational(0)));
    threshold = initial > 0.0 ? 1e6 * initial : std::numeric_limits<double>::infinity();
  }
  RunRecord rec;
  for (const auto& q : cfg.q_invs) rec.weighted_sup[q] = 0.0;
  detail::PhaseState s{ComplexVector(u0.coeffs().begin(), u0.coeffs().end()),
                       ComplexVector(u1.coeffs().begin(), u1.coeffs().end())};
  double t = 0.0;
  for (double target : cfg.resolved_sample_times()) {
    // Step ends are start + k dt, so the steps telescope to target − start
    // exactly; accumulating t += dt drifts by ~1e-11 over 10⁴ steps.
    const double start = t;
    for (std::size_t k = 1; t < target; ++k) {
      double end = std::min(start + static_cast<double>(k) * cfg.dt, target);
      if (target - end < 1e-12 * target) end = target;  // no sliver step
      const double step = end - t;
      double sup = 0.0;
      try {
        detail::lawson_step(*grid, s, step, cfg.alpha, cfg.coefficient, cfg.quadrature, mask, &sup);
      } catch (const NonFiniteStage& e) {
        rec.status = RunStatus::QuadratureFailure;
        rec.message = e.what();
        rec.final_time = t;
        return rec;
      }
      if (sup > threshold) {
        rec.status = RunStatus::BlowupDetected;
        rec.message = "sup norm " + std::to_string(sup) + " exceeded threshold " + std::to_string(threshold);
        rec.final_time = t;
        return rec;
      }
      t = end;
    }
    const auto u = SpectralField::from_coeffs(grid, s.u);
    const double sup = lp_norm(u, Rational(0));
    if (!std::isfinite(sup)) {
      rec.status = RunStatus::QuadratureFailure;
      rec.message = "non-finite solution at t = " + std::to_string(t);
      rec.final_time = t;
      return rec;
    }
    if (sup > threshold) {
      rec.status = RunStatus::BlowupDetected;
      rec.message = "sup norm " + std::to_string(sup) + " exceeded threshold " + std::to_string(threshold);
      rec.final_time = t;
      return rec;
    }
    detail::record_sample(rec, cfg, u, t);
    if (cfg.keep_snapshots) rec.snapshots.push_back(u);
  }
  rec.final_time = t;
  return rec;
}

/// The linear solution (κ = 0) sampled at the same times, by exact propagation.
inline RunRecord linear_reference(const SemilinearConfig& cfg) {
  cfg.validate();
  const auto grid = Grid::make(cfg.geometry);
  const auto [u0, u1] = detail::initial_fields(cfg, grid);
  RunRecord rec;
  for (const auto& q : cfg.q_invs) rec.weighted_sup[q] = 0.0;
  const EvolutionState start(0.0, u0, u1);
  for (double t : cfg.resolved_sample_times()) detail::record_sample(rec, cfg, propagate(start, t).u, t);
  rec.final_time = rec.series.times.back();
  return rec;
}

struct EpsilonSearch {
  double epsilon0 = 0.0;          // largest tested amplitude satisfying the criterion
  double ratio = 0.0;             // weighted sup / linear weighted sup at epsilon0
  std::vector<std::pair<double, bool>> tested;
};

/// Bisection (geometric) for the largest ε whose run completes with
/// sup_t weighted‖u‖ ≤ ratio_limit × sup_t weighted‖u_lin‖ for the first q.
inline EpsilonSearch bisect_epsilon(SemilinearConfig cfg, double eps_hi, int iterations, double ratio_limit = 2.0) {
  if (!(eps_hi > 0.0) || iterations < 0 || !(ratio_limit > 1.0)) throw std::invalid_argument("bisect_epsilon: bad arguments");
  const Rational q = cfg.q_invs.front();
  cfg.epsilon = 1.0;
  const double linear_unit = linear_reference(cfg).weighted_sup.at(q);
  if (!(linear_unit > 0.0)) throw std::invalid_argument("bisect_epsilon: zero datum");
  EpsilonSearch out;
  auto passes = [&](double eps, double* ratio) {
    cfg.epsilon = eps;
    const auto rec = run(cfg);
    bool ok = rec.status == RunStatus::CompletedGlobal;
    const double r = ok ? rec.weighted_sup.at(q) / (eps * linear_unit) : std::numeric_limits<double>::infinity();
    ok = ok && r <= ratio_limit;
    out.tested.emplace_back(eps, ok);
    if (ratio) *ratio = r;
    return ok;
  };
  double r = 0.0;
  if (passes(eps_hi, &r)) {
    out.epsilon0 = eps_hi;
    out.ratio = r;
    return out;
  }
  double hi = eps_hi, lo = eps_hi;
  for (int i = 0;; ++i) {
    if (i == 60) throw std::runtime_error("bisect_epsilon: no passing amplitude found");
    lo *= 0.5;
    if (passes(lo, &r)) break;
    hi = lo;
  }
  out.epsilon0 = lo;
  out.ratio = r;
  for (int i = 0; i < iterations; ++i) {
    const double mid = std::sqrt(lo * hi);
    double rm = 0.0;
    if (passes(mid, &rm)) {
      lo = mid;
      out.epsilon0 = mid;
      out.ratio = rm;
    } else {
      hi = mid;
    }
  }
  return out;
}

struct ContractionReport {
  std::vector<double> distances;  // X(T) distance between consecutive iterates
  std::vector<double> ratios;     // distances[j+1] / distances[j]
  bool diverged = false;
  bool reached_roundoff = false;
};

/// Picard iterates u^{(j+1)} = u_lin + N u^{(j)} on the uniform grid of step dt
/// over [0, horizon], Duhamel integral by the trapezoid rule in s.
inline ContractionReport contraction_diagnostic(const SemilinearConfig& cfg, int iterations) {
  cfg.validate();
  if (cfg.horizon > 1.0) throw std::invalid_argument("contraction_diagnostic: horizon must be <= 1");
  if (iterations < 1) throw std::invalid_argument("contraction_diagnostic: need at least one iteration");
  const auto grid = Grid::make(cfg.geometry);
  const auto [u0, u1] = detail::initial_fields(cfg, grid);
  const auto mask = detail::dealias_mask(*grid);
  const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  if (steps < 1) throw std::invalid_argument("contraction_diagnostic: horizon shorter than dt");
  const double h = cfg.horizon / static_cast<double>(steps);
  const auto xi2 = grid->xi_squared();
  const int n = cfg.geometry.n;

  std::vector<ComplexVector> lin(steps + 1), current;
  const EvolutionState start(0.0, u0, u1);
  for (std::size_t m = 0; m <= steps; ++m) {
    const auto st = propagate(start, h * static_cast<double>(m));
    lin[m].assign(st.u.coeffs().begin(), st.u.coeffs().end());
  }
  current = lin;

  auto x_norm = [&](const std::vector<ComplexVector>& a, const std::vector<ComplexVector>& b) {
    double d = 0.0;
    for (std::size_t m = 0; m <= steps; ++m) {
      ComplexVector diff(a[m].size());
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a[m][i] - b[m][i];
      const auto f = SpectralField::from_coeffs(grid, std::move(diff));
      double s = 0.0;
      for (const auto& q : cfg.q_invs) s += weighted_norm(lp_norm(f, q), h * static_cast<double>(m), q, n);
      d = std::max(d, s);
    }
    return d;
  };
  double scale = 0.0;
  {
    std::vector<ComplexVector> zero(steps + 1, ComplexVector(grid->spectral_size()));
    scale = x_norm(lin, zero);
  }

  ContractionReport rep;
  for (int j = 0; j < iterations; ++j) {
    std::vector<ComplexVector> nl(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) nl[k] = detail::power_term(*grid, current[k], cfg.alpha, cfg.coefficient, mask);
    std::vector<ComplexVector> next = lin;
    for (std::size_t m = 1; m <= steps; ++m) {
      for (std::size_t k = 0; k < m; ++k) {  // K(0) = 0 removes the k = m term
        const double w = (k == 0 ? 0.5 : 1.0) * h;
        const double lag = h * static_cast<double>(m - k);
        for (std::size_t i = 0; i < xi2.size(); ++i) next[m][i] += w * kernel_symbol(lag, xi2[i]) * nl[k][i];
      }
    }
    const double d = x_norm(next, current);
    if (!std::isfinite(d) || (scale > 0.0 && d > 1e6 * scale)) {
      rep.diverged = true;
      rep.distances.push_back(d);
      break;
    }
    rep.distances.push_back(d);
    current = std::move(next);
    if (d <= 1e-13 * scale) {
      rep.reached_roundoff = true;
      break;
    }
  }
  for (std::size_t j = 1; j < rep.distances.size(); ++j)
    if (rep.distances[j - 1] > 0.0) rep.ratios.push_back(rep.distances[j] / rep.distances[j - 1]);
  return rep;
}

struct AuxiliaryIntegral {
  double value = 0.0;
  double envelope = 0.0;
  double ratio() const { return value / envelope; }
};

namespace detail {
inline void check_nu(double nu) {
  if (!(nu > -1.0)) throw std::invalid_argument("auxiliary integral needs nu > -1");
}

/// ∫₀^Y y^ν g(y) dy via σ = y^{ν+1}, geometric panels in σ towards 0.
template <class G>
double singular_end_integral(double nu, double Y, G&& g) {
  if (Y <= 0.0) return 0.0;
  const double e = 1.0 / (nu + 1.0);
  const double top = std::pow(Y, nu + 1.0);
  auto integrand = [&](double sigma) { return g(std::pow(sigma, e)) * e; };
  double sum = 0.0, hi = top;
  for (int k = 0; k < 60; ++k) {
    const double lo = 0.5 * hi;
    sum += gauss_legendre<20>(integrand, lo, hi);
    hi = lo;
  }
  return sum + gauss_legendre<20>(integrand, 0.0, hi);
}

/// ∫_0^S w(s) ds with panels geometric in 1 + s.
template <class W>
double log_graded_integral(double S, W&& w) {
  if (S <= 0.0) return 0.0;
  double sum = 0.0, lo = 0.0;
  while (lo < S) {
    const double hi = std::min(S, 2.0 * (1.0 + lo) - 1.0);
    sum += gauss_legendre<20>(w, lo, hi);
    lo = hi;
  }
  return sum;
}
}  // namespace detail

/// ∫₀ᵗ (t−s)^ν (1+s)^μ ds with the lemma's envelope.
inline AuxiliaryIntegral auxiliary_integral(double nu, double mu, double t) {
  detail::check_nu(nu);
  if (!(t > 0.0)) throw std::invalid_argument("auxiliary integral needs t > 0");
  const double half = 0.5 * t;
  // s ∈ [t/2, t] written in y = t − s ∈ [0, t/2]; s ∈ [0, t/2] directly.
  const double near = detail::singular_end_integral(nu, half, [&](double y) { return std::pow(1.0 + t - y, mu); });
  const double far = detail::log_graded_integral(half, [&](double s) { return std::pow(t - s, nu) * std::pow(1.0 + s, mu); });
  AuxiliaryIntegral out;
  out.value = near + far;
  if (mu < -1.0) out.envelope = std::pow(1.0 + t, nu);
  else if (mu == -1.0) out.envelope = std::pow(1.0 + t, nu) * std::log(std::numbers::e + t);
  else out.envelope = std::pow(1.0 + t, 1.0 + nu + mu);
  return out;
}

/// ∫₀ᵗ (t−s)^ν e^{−c(t−s)} (1+s)^μ ds against (1+t)^μ.
inline AuxiliaryIntegral auxiliary_integral_exponential(double nu, double mu, double c, double t) {
  detail::check_nu(nu);
  if (!(c > 0.0)) throw std::invalid_argument("exponential variant needs c > 0");
  if (!(t > 0.0)) throw std::invalid_argument("auxiliary integral needs t > 0");
  const double half = 0.5 * t;
  const double near =
      detail::singular_end_integral(nu, half, [&](double y) { return std::exp(-c * y) * std::pow(1.0 + t - y, mu); });
  const double far = detail::log_graded_integral(
      half, [&](double s) { return std::pow(t - s, nu) * std::exp(-c * (t - s)) * std::pow(1.0 + s, mu); });
  return {near + far, std::pow(1.0 + t, mu)};
}

}  // namespace plate
