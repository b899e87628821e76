#pragma once

// Exact Fourier-space evolution of u_tt + Δ²u + u = 0.  With ω(ξ) = √(1+|ξ|⁴)
// the solution operator is the rotation
//   û(t+s)   =  cos(sω) û + sin(sω)/ω û_t
//   û_t(t+s) = -ω sin(sω) û + cos(sω) û_t
// so there is no time-step error.

#include "plate/spectral_field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace plate {

inline double plate_frequency(double xi_sq) { return std::sqrt(1.0 + xi_sq * xi_sq); }

/// K̂(t,ξ) = sin(t ω)/ω, evaluated from |ξ|².
inline double kernel_symbol(double t, double xi_sq) {
  const double w = plate_frequency(xi_sq);
  return std::sin(t * w) / w;
}

/// cos(t ω), the symbol acting on u₀.
inline double cosine_symbol(double t, double xi_sq) { return std::cos(t * plate_frequency(xi_sq)); }

struct EvolutionState {
  double t = 0.0;
  SpectralField u;
  SpectralField ut;

  EvolutionState(double time, SpectralField displacement, SpectralField velocity)
      : t(time), u(std::move(displacement)), ut(std::move(velocity)) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    if (!u.same_geometry(ut)) throw std::invalid_argument("u and u_t live on different grids");
  }
};

namespace detail {
/// Applies the rotation by angle s·ω in place on coefficient arrays.
inline void rotate(std::span<const double> xi_sq, std::span<Complex> u, std::span<Complex> ut, double s) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = plate_frequency(xi_sq[i]);
    const double c = std::cos(s * w), sn = std::sin(s * w);
    const Complex a = u[i], b = ut[i];
    u[i] = c * a + (sn / w) * b;
    ut[i] = -w * sn * a + c * b;
  }
}
}  // namespace detail

/// Advances the state by dt; negative dt runs the exact flow backwards.
inline EvolutionState propagate(const EvolutionState& state, double dt) {
  if (!state.u.same_geometry(state.ut)) throw std::invalid_argument("u and u_t live on different grids");
  if (state.t + dt < 0.0) throw std::invalid_argument("propagation before t = 0");
  ComplexVector u(state.u.coeffs().begin(), state.u.coeffs().end());
  ComplexVector ut(state.ut.coeffs().begin(), state.ut.coeffs().end());
  detail::rotate(state.u.grid()->xi_squared(), u, ut, dt);
  return EvolutionState(state.t + dt, SpectralField::from_coeffs(state.u.grid(), std::move(u)),
                        SpectralField::from_coeffs(state.ut.grid(), std::move(ut)));
}

/// u(t) = K(t,·) ∗ u₁ for u₀ = 0, evaluated directly at time t.
inline SpectralField solve_from_rest(const SpectralField& u1, double t) {
  return u1.apply_multiplier([t](double xi_sq) { return kernel_symbol(t, xi_sq); });
}

/// E = ½ ∫ |u_t|² + |Δu|² + |u|², evaluated spectrally via Plancherel.
inline double energy(const EvolutionState& state) {
  const auto xi2 = state.u.grid()->xi_squared();
  const auto mult = state.u.grid()->multiplicity();
  const auto u = state.u.coeffs();
  const auto ut = state.ut.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w2 = 1.0 + xi2[i] * xi2[i];
    sum += mult[i] * (std::norm(ut[i]) + w2 * std::norm(u[i]));
  }
  return 0.5 * sum * state.u.geometry().dual_cell_measure();
}

}  // namespace plate
