#include "plate/decay_lab.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace plate;

namespace {
GridPtr grid(int n, std::size_t points, double L) { return Grid::make(GridGeometry{n, points, L}); }
const double pi = std::numbers::pi;
}  // namespace

TEST(Datum, GaussianL1) {
  DatumSpec d;
  d.kind = DatumKind::Gaussian;
  d.width = 1.0;
  EXPECT_NEAR(lp_norm(make_datum(d, grid(1, 512, 20.0)), 1), std::sqrt(2 * pi), 1e-8);
  EXPECT_NEAR(lp_norm(make_datum(d, grid(2, 256, 20.0)), 1), 2 * pi, 1e-8);
}

TEST(Datum, SingularPowerConverges) {
  DatumSpec d;
  d.kind = DatumKind::SingularPower;
  d.k = 1.0;
  double prev = 1.0;
  for (std::size_t N : {64, 128, 256, 512}) {
    const double err = std::abs(lp_norm(make_datum(d, grid(2, N, 2.0)), 1) - 2 * pi) / (2 * pi);
    EXPECT_LT(err, prev) << N;
    prev = err;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(Datum, RejectsBadSpecs) {
  DatumSpec d;
  d.kind = DatumKind::SingularPower;
  d.k = 2.0;
  EXPECT_THROW(make_datum(d, grid(2, 64, 4.0)), std::invalid_argument);
  d.kind = DatumKind::SmoothBump;
  d.radius = 5.0;
  EXPECT_THROW(make_datum(d, grid(1, 64, 4.0)), std::invalid_argument);
  EXPECT_THROW(parse_datum_kind("square"), std::invalid_argument);
}

TEST(Datum, BandLimitedRadialSupport) {
  DatumSpec d;
  d.kind = DatumKind::BandLimitedRadial;
  d.r_lo = 0.5;
  d.r_hi = 1.5;
  const auto g = grid(2, 128, 40.0);
  const auto f = make_datum(d, g);
  const auto xi2 = g->xi_squared();
  double inside = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < xi2.size(); ++i) {
    const double r = std::sqrt(xi2[i]);
    double& slot = (r > d.r_lo && r < d.r_hi) ? inside : outside;
    slot = std::max(slot, std::abs(f.coeffs()[i]));
  }
  EXPECT_GT(inside, 0.0);
  EXPECT_LE(outside, 1e-12 * inside);
}

TEST(Datum, RandomIsSeeded) {
  DatumSpec d;
  d.kind = DatumKind::RandomBandLimited;
  d.band_limit = 2.0;
  d.seed = 5;
  const auto g = grid(1, 256, 30.0);
  const auto a = make_datum(d, g), b = make_datum(d, g);
  d.seed = 6;
  const auto c = make_datum(d, g);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(a.values()[i], b.values()[i]);
  EXPECT_NE(a.values()[10], c.values()[10]);
}

TEST(RunDecay, L2BoundedByDatumOverOmega) {
  DatumSpec d;
  d.kind = DatumKind::Gaussian;
  d.width = 0.7;
  const auto g = grid(1, 2048, 200.0);
  const auto u1 = make_datum(d, g);
  const double bound = spectral_l2_norm(u1.apply_multiplier([](double xi2) { return 1.0 / plate_frequency(xi2); }));
  // the bound holds on the torus as well, so the wrap-around guard is off
  const auto s = run_decay(d, g, {LebesguePair(Rational(1, 2), Rational(1, 2))}, log_spaced_times(0.1, 30.0, 20), false);
  for (double v : s.norms.at(Rational(1, 2))) EXPECT_LE(v, bound * (1 + 1e-12));
}

TEST(RunDecay, SmallTimeSlopeIsOne) {
  DatumSpec d;
  d.kind = DatumKind::SmoothBump;
  d.radius = 2.0;
  const auto g = grid(1, 1024, 20.0);
  // unbanded bump: the guard would use the Nyquist band; nothing travels far by t = 0.1
  const auto s = run_decay(d, g, {LebesguePair(Rational(1, 2), Rational(1, 2))}, log_spaced_times(1e-3, 1e-1, 20), false);
  const auto fit = fit_slope(s, Rational(1, 2), 1e-3, 1e-1);
  EXPECT_NEAR(fit.exponent, 1.0, 0.02);
  EXPECT_EQ(verdict(fit, predict(LebesguePair(Rational(1, 2), Rational(1, 2)), 1), 0.02, false), Verdict::Consistent);
}

TEST(RunDecay, RejectsWraparound) {
  DatumSpec d;
  d.kind = DatumKind::SmoothBump;
  d.radius = 2.0;
  d.band_limit = 2.0;
  const auto g = grid(1, 1024, 50.0);
  EXPECT_THROW(run_decay(d, g, {LebesguePair(1, Rational(1, 4))}, {10.0, 100.0}), WraparoundError);
  EXPECT_NO_THROW(run_decay(d, g, {LebesguePair(1, Rational(1, 4))}, {1.0, 4.0}));
}

TEST(RunDecay, ParallelMatchesSerial) {
  DatumSpec d;
  d.kind = DatumKind::SmoothBump;
  d.radius = 2.0;
  d.band_limit = 2.0;
  const auto g = grid(1, 4096, 600.0);
  const std::vector<LebesguePair> pairs{LebesguePair(1, Rational(1, 4)), LebesguePair(1, 0)};
  const auto times = phase_locked_times(5, 60, 12);
  const auto a = run_decay(d, g, pairs, times, true, 1), b = run_decay(d, g, pairs, times, true, 3);
  EXPECT_EQ(a.norms, b.norms);
}

TEST(PhaseLockedTimes, HalfIntegerMultiplesOfPi) {
  const auto t = phase_locked_times(50, 2000, 40);
  EXPECT_GE(t.size(), 30u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_NEAR(std::abs(std::sin(t[i])), 1.0, 1e-9);
    if (i) EXPECT_GT(t[i], t[i - 1]);
  }
}

TEST(FitSlope, SyntheticFixtures) {
  const auto t = log_spaced_times(1.0, 1e4, 60);
  std::vector<double> y(t.size()), c(t.size(), 3.0), yl(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    y[i] = 2.0 * std::pow(t[i], -0.25);
    yl[i] = std::pow(t[i], -0.5) * std::sqrt(std::log(t[i]));
  }
  EXPECT_NEAR(fit_power_law(t, y, 1.0, 1e4).exponent, -0.25, 1e-10);
  EXPECT_NEAR(fit_power_law(t, c, 1.0, 1e4).exponent, 0.0, 1e-12);
  const auto f = fit_power_law(t, yl, 1e2, 1e4, 0.5);
  EXPECT_GT(f.exponent, -0.5 + 0.01);
  ASSERT_TRUE(f.with_log_factor);
  EXPECT_NEAR(f.with_log_factor->slope, -0.5, 0.01);
  EXPECT_GE(f.r_squared, 0.0);
  EXPECT_LE(f.r_squared, 1.0);
}

TEST(FitSlope, Errors) {
  const auto t = log_spaced_times(1.0, 10.0, 20);
  std::vector<double> y(t.size(), 1.0);
  EXPECT_THROW(fit_power_law(t, y, 5.0, 5.0), std::invalid_argument);
  EXPECT_THROW(fit_power_law(t, y, 9.0, 10.0), std::invalid_argument);  // too few samples
  DecaySeries s;
  s.times = t;
  EXPECT_THROW(fit_slope(s, Rational(1, 4), 1.0, 10.0), std::invalid_argument);
}

TEST(Verdict, Rule) {
  EXPECT_EQ(verdict(-0.187, -3.0 / 16, 0.03), Verdict::Consistent);
  EXPECT_EQ(verdict(-0.60, -0.25, 0.03), Verdict::UpperBoundSlack);
  EXPECT_EQ(verdict(-0.10, -0.25, 0.03), Verdict::Violation);
}

TEST(Envelope, SingleConstantCoversSeries) {
  DatumSpec d;
  d.kind = DatumKind::SmoothBump;
  d.radius = 2.0;
  d.band_limit = 2.0;
  const auto g = grid(1, 8192, 600.0);
  const auto pair = LebesguePair(1, Rational(1, 4));
  const auto s = run_decay(d, g, {pair}, log_spaced_times(0.01, 60.0, 40));
  const auto pr = predict(pair, 1);
  const double C = envelope_constant(s, pr);
  EXPECT_GT(C, 0.0);
  EXPECT_LT(C, 10.0);
  for (std::size_t i = 0; i < s.times.size(); ++i)
    EXPECT_LE(s.norms.at(pair.q_inv())[i], C * s.datum_norms.at(1) * theory_envelope(pr, s.times[i]) * (1 + 1e-12));
}

TEST(HighFrequencyLoss, InadmissiblePairGrows) {
  const auto g = grid(3, 128, 10.0);
  const LebesguePair l1(1, 1);
  ASSERT_EQ(classify(l1, 3), Admissibility::Inadmissible);
  const auto r = high_frequency_loss(l1, g, 0.2, {1.0, 2.0, 3.0});
  EXPECT_LT(r[0].ratio, r[1].ratio);
  EXPECT_LT(r[1].ratio, r[2].ratio);
  EXPECT_GT(r[2].ratio / r[0].ratio, 1.5);
  const auto l2 = high_frequency_loss(LebesguePair(Rational(1, 2), Rational(1, 2)), g, 0.2, {1.0, 3.0});
  EXPECT_LT(l2[1].ratio, l2[0].ratio);
}
