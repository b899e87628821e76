#include "plate/bessel.hpp"
#include "plate/datum.hpp"
#include "plate/propagator.hpp"
#include "plate/radial_oscillatory.hpp"
#include "plate/slope_fit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace plate;

namespace {
const double pi = std::numbers::pi;

// bisection on s³ − s² − 1 = 0
double cubic_root() {
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m * m * m - m * m - 1.0 > 0.0 ? hi : lo) = m;
  }
  return std::sqrt(0.5 * (lo + hi));
}

template <class F>
double bisect_zero(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi), fm = f(m);
    if ((fm > 0) == (flo > 0)) lo = m, flo = fm;
    else hi = m;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST(Bessel, AgainstStandardLibrary) {
  for (double nu : {0.0, 0.5, 1.0, 1.5})  // the standard library requires nu >= 0
    for (double z = 0.0; z < 300.0; z += 0.173) {
      const double ref = std::cyl_bessel_j(nu, z);
      const double scale = z > 1.0 ? std::sqrt(2.0 / (pi * z)) : 1.0;
      EXPECT_NEAR(bessel_j(nu, z), ref, 1e-10 * scale) << nu << " " << z;
    }
}

TEST(Bessel, Examples) {
  EXPECT_EQ(bessel_j(0.0, 0.0), 1.0);
  for (double z : {1.0, 10.0, 50.0}) {
    EXPECT_NEAR(bessel_j(0.5, z), std::sqrt(2.0 / (pi * z)) * std::sin(z), 1e-12 * std::sqrt(2.0 / (pi * z)));
    EXPECT_NEAR(bessel_j(-0.5, z), std::sqrt(2.0 / (pi * z)) * std::cos(z), 1e-12 * std::sqrt(2.0 / (pi * z)));
  }
}

TEST(Bessel, LeadingAsymptoticRemainder) {
  // |J₀ − √(2/πz) cos(z − π/4)| z^{3/2} stays below a fixed constant
  double c_lo = 0.0, c_hi = 0.0;
  for (double z = 20.0; z <= 2000.0; z *= 1.01) {
    const double c = std::abs(bessel_j(0.0, z) - std::sqrt(2.0 / (pi * z)) * std::cos(z - pi / 4)) * std::pow(z, 1.5);
    double& slot = z < 200.0 ? c_lo : c_hi;
    slot = std::max(slot, c);
  }
  // the leading correction is (1/8)√(2/π) ≈ 0.0997
  EXPECT_LT(c_lo, 0.11);
  EXPECT_LT(c_hi, 0.11);
  EXPECT_GT(c_hi, 0.5 * c_lo);  // the constant is attained, not an artefact of z
}

TEST(StationaryPoint, Examples) {
  const auto s = stationary_point(2.0);
  EXPECT_NEAR(s.r0, cubic_root(), 1e-12);
  EXPECT_NEAR(s.r0, 1.21061, 1e-5);
  for (double v : {1e4, 1e6}) EXPECT_NEAR(stationary_point(v).r0 / (0.5 * v), 1.0, 2.0 / v);
  for (double v : {1e-4, 1e-6}) EXPECT_NEAR(stationary_point(v).r0 / std::cbrt(0.5 * v), 1.0, 1e-3);
}

TEST(StationaryPoint, ResidualAndMonotone) {
  double prev = 0.0;
  for (double v = 1e-5; v < 1e5; v *= 1.1) {
    const auto s = stationary_point(v);
    EXPECT_LE(std::abs(s.residual), 1e-12 * std::max(1.0, v)) << v;
    EXPECT_GT(s.r0, prev);
    // lower end of the solver bracket
    EXPECT_GE(s.r0, std::min(0.5 * v, std::cbrt(0.5 * v)) * (1 - 1e-12));
    prev = s.r0;
  }
  EXPECT_THROW(stationary_point(0.0), std::invalid_argument);
}

TEST(RadialConvolution, SmallTimeIsTTimesDatum) {
  const auto p = RadialProfile::smooth_bump(0.5, 1.5);
  for (int n = 1; n <= 3; ++n)
    for (double x : {0.3, 2.0, 7.0}) {
      const double f = radial_inverse_transform(p, x, n);
      EXPECT_NEAR(radial_convolution(p, 1e-3, x, n) / (1e-3 * f), 1.0, 1e-5) << n << " " << x;
    }
}

TEST(RadialConvolution, ZeroProfile) {
  const RadialProfile zero(1.0, 2.0, [](double) { return 0.0; });
  EXPECT_EQ(radial_convolution(zero, 3.0, 2.0, 2), 0.0);
}

TEST(RadialConvolution, MatchesFftIn1d) {
  DatumSpec d;
  d.kind = DatumKind::BandLimitedRadial;
  d.r_lo = 0.5;
  d.r_hi = 1.5;
  const auto g = Grid::make(GridGeometry{1, 4096, 512.0});
  const auto u = solve_from_rest(make_datum(d, g), 20.0);
  const auto p = RadialProfile::smooth_bump(0.5, 1.5);
  const std::size_t j = 2048 + 40;  // x = 10 at spacing 1/4
  ASSERT_NEAR(g->coordinate(j, 0), 10.0, 1e-12);
  const double q = radial_convolution(p, 20.0, 10.0, 1);
  EXPECT_NEAR(u.values()[j] / q, 1.0, 1e-4);
}

TEST(RadialConvolution, PanelBudgetIsReported) {
  const auto p = RadialProfile::smooth_bump(1.5, 3.0);
  EXPECT_THROW(radial_convolution(p, 1e4, 4e4, 1, 50), QuadratureError);
}

TEST(StationaryPhase, ConvergesToQuadrature) {
  const auto p = RadialProfile::smooth_bump(1.5, 3.0);
  std::vector<double> ts, errs;
  for (double t : {100.0, 316.0, 1000.0, 3162.0, 10000.0}) {
    const double x = 4.2 * t;
    const auto sp = stationary_phase_value(p, t, x, 1);
    ASSERT_TRUE(sp.has_contribution);
    const double amp = std::abs(sp.value / sp.sine);
    ts.push_back(t);
    errs.push_back(std::abs(sp.value - radial_convolution(p, t, x, 1)) / amp);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_LT(errs[i], errs[i - 1]);
  EXPECT_LT(power_law_fit(ts, errs).slope, -1.0 / 6.0);
}

TEST(StationaryPhase, ZerosTrackQuadrature) {
  const auto p = RadialProfile::smooth_bump(1.5, 3.0);
  const double t = 1000.0, x0 = 4.2 * t;
  const double r0 = stationary_point(x0 / t).r0;
  const double period = 2 * pi / r0;  // phase t·h(r₀) changes at rate r₀ in x
  // bracket a sign change of the approximation within one period
  double a = x0, b = x0;
  const double step = period / 16;
  auto spv = [&](double x) { return stationary_phase_value(p, t, x, 1).value; };
  for (b = x0 + step; (spv(b) > 0) == (spv(a) > 0); a = b, b += step) {}
  const double z_sp = bisect_zero(spv, a, b);
  const double z_q = bisect_zero([&](double x) { return radial_convolution(p, t, x, 1); }, z_sp - step, z_sp + step);
  EXPECT_LE(std::abs(z_sp - z_q) * r0, 0.1);
}

TEST(StationaryPhase, NoContributionOutsideSupport) {
  const auto p = RadialProfile::smooth_bump(0.2, 0.5);
  const auto sp = stationary_phase_value(p, 100.0, 420.0, 1);
  EXPECT_FALSE(sp.has_contribution);
  EXPECT_EQ(sp.value, 0.0);
}

TEST(BranchIntegrals, PlusBranchDecaysFaster) {
  const auto p = RadialProfile::polynomial_bump(1.5, 3.0);
  std::vector<double> ts, plus, minus;
  for (double t : {100.0, 316.0, 1000.0, 3162.0, 10000.0}) {
    double mp = 0.0, mm = 0.0;
    for (int j = 0; j < 16; ++j) {
      const auto b = branch_integrals(p, t, 4.2 * t + 0.2 * j, 1);
      mp = std::max(mp, std::abs(b.plus));
      mm = std::max(mm, std::abs(b.minus));
    }
    ts.push_back(t);
    plus.push_back(mp);
    minus.push_back(mm);
  }
  const double s_plus = power_law_fit(ts, plus).slope, s_minus = power_law_fit(ts, minus).slope;
  EXPECT_NEAR(s_minus, -0.5, 0.05);
  EXPECT_LE(s_plus, s_minus - 0.4);
  EXPECT_LE(s_plus, -1.0);
}

TEST(VanDerCorput, LinearPhase) {
  for (double lambda : {1.0, 10.0, 1e3, 1e4}) {
    const double prod = vdc_bound_check(lambda, 0.0, 1.0, {[=](double y) { return lambda * y; }, [=](double) { return lambda; }});
    EXPECT_NEAR(prod, std::abs(std::polar(1.0, lambda) - 1.0), 1e-9);
    EXPECT_LE(prod, 2.0 + 1e-9);
  }
}

TEST(VanDerCorput, QuadraticPhaseBounded) {
  double worst = 0.0;
  for (double t = 1.0; t <= 1e4; t *= 1.5)
    worst = std::max(worst, vdc_bound_check(2 * t, 1.0, 2.0, {[=](double y) { return t * y * y; }, [=](double y) { return 2 * t * y; }}));
  EXPECT_LE(worst, 3.0);
}

TEST(VanDerCorput, PreconditionsEnforced) {
  EXPECT_THROW(vdc_bound_check(1.0, 0.0, 1.0, {[](double) { return 0.0; }, [](double) { return 0.0; }}), std::invalid_argument);
  EXPECT_THROW(vdc_bound_check(0.5, -1.0, 1.0, {[](double y) { return y * y * y + y; }, [](double y) { return 3 * y * y + 1; }}),
               std::invalid_argument);  // h' = 3y²+1 is not monotone on [-1,1]
}

TEST(Annulus, Examples) {
  const auto a4 = choose_annulus(4.0);
  EXPECT_NEAR(a4.b, 64 * std::sqrt(2.0) / 20, 1e-14);
  EXPECT_LT(a4.a, a4.b);
  EXPECT_THROW(choose_annulus(1.0), std::domain_error);
  const double a_star = annulus_feasibility_threshold();
  EXPECT_NEAR(a_star * a_star, 4.0 / (std::sqrt(2.0) - 1.0), 1e-12);
  EXPECT_NEAR(a_star, 3.1075, 1e-4);
  EXPECT_NO_THROW(choose_annulus(a_star * 1.001));
  EXPECT_THROW(choose_annulus(a_star * 0.999), std::domain_error);
}

TEST(Optimality, ShortSequence) {
  const auto p = RadialProfile::smooth_bump(1.5, 3.0);
  const auto rows = optimality_sequence(p, choose_annulus(4.0), geometric_grid(100.0, 1000.0, 8), 1);
  ASSERT_GE(rows.size(), 6u);
  std::vector<double> t, v;
  for (const auto& r : rows) {
    EXPECT_GE(r.sine, 0.5);
    EXPECT_GT(r.scaled, 0.0);
    EXPECT_GT(r.x_star, 4.0 * r.t);
    EXPECT_LT(r.x_star, choose_annulus(4.0).b * r.t);
    t.push_back(r.t);
    v.push_back(r.value);
  }
  EXPECT_NEAR(power_law_fit(t, v).slope, -0.5, 0.05);
}

TEST(Optimality, EmptySelectionReported) {
  const auto p = RadialProfile::smooth_bump(0.2, 0.5);
  EXPECT_THROW(optimality_sequence(p, choose_annulus(4.0), geometric_grid(100.0, 200.0, 5), 1), EmptySelectionError);
}
