#pragma once

// Periodic grid on [-L, L)^n approximating whole space, together with the
// FFTW plans and per-mode tables shared by every field living on it.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace plate {

using Complex = std::complex<double>;

template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t alignment = 64;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t count) {
    const std::size_t bytes = ((count * sizeof(T) + alignment - 1) / alignment) * alignment;
    void* p = std::aligned_alloc(alignment, bytes == 0 ? alignment : bytes);
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept { std::free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using RealVector = std::vector<double, AlignedAllocator<double>>;
using ComplexVector = std::vector<Complex, AlignedAllocator<Complex>>;

struct GridGeometry {
  int n = 1;                       // spatial dimension, 1..3
  std::size_t points_per_axis = 0; // power of two
  double half_width = 0.0;         // L, domain [-L, L)^n

  double spacing() const { return 2.0 * half_width / static_cast<double>(points_per_axis); }
  double nyquist() const { return std::numbers::pi * static_cast<double>(points_per_axis) / (2.0 * half_width); }
  double dual_spacing() const { return std::numbers::pi / half_width; }
  double cell_volume() const { return std::pow(spacing(), n); }
  /// Measure of a dual cell divided by (2π)^n, i.e. (2L)^{-n}.
  double dual_cell_measure() const { return std::pow(2.0 * half_width, -n); }
  std::size_t total_points() const {
    std::size_t total = 1;
    for (int d = 0; d < n; ++d) total *= points_per_axis;
    return total;
  }
  /// Number of stored coefficients of the half-spectrum (last axis halved).
  std::size_t spectral_size() const { return total_points() / points_per_axis * (points_per_axis / 2 + 1); }

  void validate() const {
    if (n < 1 || n > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (points_per_axis < 4 || (points_per_axis & (points_per_axis - 1)) != 0)
      throw std::invalid_argument("points per axis must be a power of two >= 4");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("half width must be positive");
  }

  bool operator==(const GridGeometry&) const = default;
};

/// Smallest half width that keeps data band-limited to |ξ| ≤ band_limit and
/// supported in |x| ≤ x_support free of periodic wrap-around up to t_max.
/// Group speed of ω = √(1+|ξ|⁴) is bounded by 2|ξ|.
inline double wraparound_half_width(double x_support, double band_limit, double t_max) {
  return 1.2 * (x_support + 2.0 * (2.0 * band_limit) * t_max);
}

inline bool satisfies_wraparound_rule(const GridGeometry& g, double x_support, double band_limit, double t_max) {
  return g.half_width >= wraparound_half_width(x_support, band_limit, t_max);
}

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// Immutable grid: geometry, FFT plans and per-mode tables.  Shared by all
/// fields on the same geometry; plans are executed with the new-array API, which
/// is safe to call concurrently.
class Grid {
 public:
  static std::shared_ptr<const Grid> make(const GridGeometry& geometry) {
    geometry.validate();
    static std::mutex cache_mutex;
    static std::map<std::tuple<int, std::size_t, double>, std::weak_ptr<const Grid>> cache;
    std::lock_guard lock(cache_mutex);
    const auto key = std::make_tuple(geometry.n, geometry.points_per_axis, geometry.half_width);
    if (auto it = cache.find(key); it != cache.end()) {
      if (auto alive = it->second.lock()) return alive;
    }
    std::shared_ptr<const Grid> grid(new Grid(geometry));
    cache[key] = grid;
    return grid;
  }

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  ~Grid() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  const GridGeometry& geometry() const { return geometry_; }
  std::size_t size() const { return geometry_.total_points(); }
  std::size_t spectral_size() const { return geometry_.spectral_size(); }

  /// |ξ|² for every stored coefficient.
  std::span<const double> xi_squared() const { return xi_squared_; }
  /// Multiplicity of each stored coefficient in the full spectrum (1 or 2).
  std::span<const double> multiplicity() const { return multiplicity_; }

  /// Signed integer wavenumber index of stored coefficient `index` along `axis`.
  long wavenumber_index(std::size_t index, int axis) const {
    const auto N = geometry_.points_per_axis;
    const auto half = N / 2 + 1;
    std::size_t k;
    if (axis == geometry_.n - 1) {
      k = index % half;
      return static_cast<long>(k);
    }
    std::size_t rest = index / half;
    for (int d = geometry_.n - 2; d > axis; --d) rest /= N;
    k = rest % N;
    return k <= N / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(N);
  }

  /// Coordinate of grid point `index` along `axis` (row-major, last axis fastest).
  double coordinate(std::size_t index, int axis) const {
    const auto N = geometry_.points_per_axis;
    std::size_t rest = index;
    for (int d = geometry_.n - 1; d > axis; --d) rest /= N;
    return -geometry_.half_width + static_cast<double>(rest % N) * geometry_.spacing();
  }

  double radius(std::size_t index) const {
    double r2 = 0.0;
    for (int d = 0; d < geometry_.n; ++d) {
      const double x = coordinate(index, d);
      r2 += x * x;
    }
    return std::sqrt(r2);
  }

  /// Continuous-transform coefficients F(ξ_k) ≈ ∫ f(x) e^{-ixξ_k} dx.
  ComplexVector forward(std::span<const double> values) const {
    if (values.size() != size()) throw std::invalid_argument("field size does not match grid");
    RealVector in(values.begin(), values.end());
    ComplexVector out(spectral_size());
    fftw_execute_dft_r2c(forward_, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = geometry_.cell_volume();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale * sign_[i];
    return out;
  }

  /// Inverse of forward: f(x_j) = (2L)^{-n} Σ_k F_k e^{i x_j ξ_k}.
  RealVector backward(std::span<const Complex> coeffs) const {
    if (coeffs.size() != spectral_size()) throw std::invalid_argument("spectrum size does not match grid");
    ComplexVector in(coeffs.size());
    const double scale = geometry_.dual_cell_measure();
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = coeffs[i] * (scale * sign_[i]);
    RealVector out(size());
    fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(in.data()), out.data());
    return out;
  }

 private:
  explicit Grid(const GridGeometry& g) : geometry_(g) {
    const int N = static_cast<int>(g.points_per_axis);
    std::vector<int> dims(g.n, N);
    RealVector real_buf(size());
    ComplexVector complex_buf(spectral_size());
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      forward_ = fftw_plan_dft_r2c(g.n, dims.data(), real_buf.data(),
                                   reinterpret_cast<fftw_complex*>(complex_buf.data()), FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r(g.n, dims.data(), reinterpret_cast<fftw_complex*>(complex_buf.data()),
                                    real_buf.data(), FFTW_ESTIMATE);
    }
    if (!forward_ || !backward_) throw std::runtime_error("FFTW planning failed");

    const std::size_t m = spectral_size();
    xi_squared_.resize(m);
    multiplicity_.resize(m);
    sign_.resize(m);
    const double dk = g.dual_spacing();
    const long last_nyquist = static_cast<long>(g.points_per_axis / 2);
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      long parity = 0;
      for (int d = 0; d < g.n; ++d) {
        const long k = wavenumber_index(i, d);
        s += (dk * k) * (dk * k);
        parity += k;
      }
      xi_squared_[i] = s;
      sign_[i] = (parity % 2 == 0) ? 1.0 : -1.0;
      const long k_last = wavenumber_index(i, g.n - 1);
      multiplicity_[i] = (k_last == 0 || k_last == last_nyquist) ? 1.0 : 2.0;
    }
  }

  GridGeometry geometry_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  std::vector<double> xi_squared_;
  std::vector<double> multiplicity_;
  std::vector<double> sign_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace plate
