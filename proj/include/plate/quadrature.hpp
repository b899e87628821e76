#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace plate {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-order Gauss–Legendre rule on [a, b].
template <unsigned Points = 10, class F>
auto gauss_legendre(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, Points>::integrate(std::forward<F>(f), a, b);
}

/// Σ over consecutive breakpoints of a Gauss–Legendre panel.
template <unsigned Points = 10, class F>
double integrate_panels(F&& f, std::span<const double> breakpoints) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) sum += gauss_legendre<Points>(f, breakpoints[i], breakpoints[i + 1]);
  return sum;
}

/// ∫_a^b f with panels of width at most max_width(x) chosen from the left end.
/// Used for oscillatory integrands where max_width encodes the local phase rate.
template <unsigned Points = 10, class F, class W>
auto integrate_adaptive_width(F&& f, double a, double b, W&& max_width, std::size_t panel_budget) {
  using Result = decltype(f(a));
  Result sum{};
  double x = a;
  std::size_t panels = 0;
  while (x < b) {
    const double w = max_width(x);
    if (!(w > 0.0)) throw QuadratureError("non-positive panel width at x = " + std::to_string(x));
    double next = x + w;
    // Avoid a sliver panel at the end.
    if (next > b || b - next < 0.25 * w) next = b;
    sum += boost::math::quadrature::gauss<double, Points>::integrate(f, x, next);
    x = next;
    if (++panels > panel_budget)
      throw QuadratureError("panel budget of " + std::to_string(panel_budget) + " exceeded on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
  }
  return sum;
}

}  // namespace plate
