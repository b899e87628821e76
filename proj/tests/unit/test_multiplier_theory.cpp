#include "plate/multiplier_theory.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace plate;

namespace {
LebesguePair pq(Rational p, Rational q) { return LebesguePair::from_exponents(p, q); }
LebesguePair p_inf(Rational p) { return LebesguePair(Rational(1) / p, 0); }
}  // namespace

TEST(Dpl, IdentityPairVanishes) { EXPECT_EQ(d_pl(pq(2, 2), 3), Rational(0)); }

TEST(Dpl, FromL1IsNOver2q) {
  for (int n = 1; n <= 6; ++n)
    for (int q = 1; q <= 9; ++q) EXPECT_EQ(d_pl(pq(1, q), n), Rational(n, 2 * q)) << n << " " << q;
}

TEST(Dpl, DualPairInTwoDimensions) { EXPECT_EQ(d_pl(pq(Rational(4, 3), 4), 2), Rational(0)); }

TEST(Beta, Examples) {
  EXPECT_EQ(beta(pq(2, 2)), Rational(0));
  EXPECT_EQ(beta(pq(1, 2)), Rational(1, 2));
  EXPECT_EQ(beta(pq(1, 4)), Rational(0));
}

TEST(Beta, DualitySymmetry) {
  // β(p,q) = β(q',p'), i.e. (a,b) -> (1-b, 1-a)
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; j <= i; ++j) {
      const Rational a(i, 24), b(j, 24);
      EXPECT_EQ(beta(LebesguePair(a, b)), beta(LebesguePair(1 - b, 1 - a))) << a << " " << b;
    }
}

TEST(Beta, BranchesAgreeOnDualLine) {
  for (int i = 12; i <= 24; ++i) {
    const Rational a(i, 24), b = 1 - a;
    const Rational upper = positive_part(a + 3 * b - 2), lower = positive_part(2 - 3 * a - b);
    EXPECT_EQ(upper, lower);
    EXPECT_EQ(beta(LebesguePair(a, b)), upper);
  }
}

TEST(Gamma, OnlyTwoLogPairs) {
  EXPECT_EQ(gamma(pq(1, 3)), Rational(1, 2));
  EXPECT_EQ(gamma(p_inf(Rational(3, 2))), Rational(1, 2));
  EXPECT_EQ(gamma(pq(2, 2)), Rational(0));
  int count = 0;
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; j <= i; ++j)
      if (gamma(LebesguePair(Rational(i, 30), Rational(j, 30))) != Rational(0)) ++count;
  EXPECT_EQ(count, 2);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(p_inf(1), 1), Admissibility::StrictInterior);
  EXPECT_EQ(d_pl(p_inf(1), 1), Rational(0));
  const auto sobolev = pq(2, Rational(10, 1));  // 2n/(n-4) at n = 5
  EXPECT_EQ(d_pl(sobolev, 5), Rational(1));
  EXPECT_EQ(classify(sobolev, 5), Admissibility::BoundaryAdmissible);
  EXPECT_EQ(classify(pq(1, 2), 4), Admissibility::Inadmissible);  // n/(2q) = 1
  EXPECT_EQ(classify(pq(1, 2), 6), Admissibility::Inadmissible);
}

TEST(Predict, Examples) {
  const auto a = predict(pq(1, 4), 1);
  EXPECT_EQ(a.large_time_exponent, Rational(-3, 16));
  EXPECT_EQ(a.small_time_exponent, Rational(5, 8));
  EXPECT_EQ(predict(pq(1, 2), 1).large_time_exponent, Rational(0));
  for (int n = 1; n <= 6; ++n) {
    const auto e = predict(pq(2, 2), n);
    EXPECT_EQ(e.large_time_exponent, Rational(0));
    EXPECT_EQ(e.small_time_exponent, Rational(1));
  }
}

TEST(Predict, LogUnknownOnlyWhereLogPairIsNotInterior) {
  EXPECT_FALSE(predict(pq(1, 3), 2).log_factor_unknown);
  EXPECT_TRUE(predict(pq(1, 3), 6).log_factor_unknown);
}

TEST(NonsingularSmallTime, Examples) {
  for (int q = 1; q <= 20; ++q) EXPECT_TRUE(nonsingular_small_time(Rational(1, q), 2));
  EXPECT_TRUE(nonsingular_small_time(Rational(0), 2));
  EXPECT_TRUE(nonsingular_small_time(Rational(1, 3), 3));
  EXPECT_FALSE(nonsingular_small_time(Rational(1, 4), 4));
}

TEST(CriticalExponents, Examples) {
  const auto c1 = critical_exponents(1, 1);
  EXPECT_EQ(c1.alpha_c, Rational(5));
  EXPECT_EQ(c1.alpha_tilde_c, Rational(4));
  const auto c2 = critical_exponents(2, 1);
  EXPECT_EQ(c2.alpha_c, Rational(3));
  EXPECT_EQ(c2.alpha_tilde_c, Rational(3));
  EXPECT_EQ(*critical_exponents(5, 2).nonexistence_threshold, Rational(9));
  EXPECT_FALSE(critical_exponents(4, 2).nonexistence_threshold);
  for (int n = 1; n <= 8; ++n) {
    const auto c = critical_exponents(n, 1);
    EXPECT_EQ(c.alpha_c <= c.alpha_tilde_c, n >= 2) << n;
  }
}

TEST(Zones, FormulasAgreeWithBetaEverywhere) {
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i <= 60; ++i)
      for (int j = 0; j <= i; ++j) {
        const LebesguePair p(Rational(i, 60), Rational(j, 60));
        EXPECT_EQ(zone_exponent(p, n), predict(p, n).large_time_exponent) << p << " n=" << n;
      }
}

TEST(LebesguePair, RejectsInvalid) {
  EXPECT_THROW(LebesguePair(Rational(1, 4), Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(LebesguePair(Rational(3, 2), Rational(0)), std::invalid_argument);
  EXPECT_THROW(LebesguePair::from_exponents(Rational(1, 2), 2), std::invalid_argument);
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("0.05"), Rational(1, 20));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

// Frozen table produced by tests/oracles/theory_oracle.py with Python fractions.
TEST(TheoryTable, MatchesIndependentOracle) {
  std::ifstream in(std::string(PLATE_TEST_DATA) + "/theory_oracle.csv");
  ASSERT_TRUE(in) << "missing oracle table";
  std::string line;
  std::getline(in, line);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> c;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) c.push_back(cell);
    ASSERT_EQ(c.size(), 9u);
    const int n = std::stoi(c[0]);
    const LebesguePair pair(parse_rational(c[1]), parse_rational(c[2]));
    const auto pr = predict(pair, n);
    EXPECT_EQ(pr.d_pl, parse_rational(c[3])) << line;
    EXPECT_EQ(pr.beta, parse_rational(c[4])) << line;
    EXPECT_EQ(pr.gamma, parse_rational(c[5])) << line;
    EXPECT_EQ(pr.large_time_exponent, parse_rational(c[6])) << line;
    EXPECT_EQ(pr.small_time_exponent, parse_rational(c[7])) << line;
    EXPECT_EQ(std::string(to_string(pr.admissibility)), c[8]) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6u * 231u);
}

TEST(TheoryTable, GridValidation) {
  EXPECT_EQ(theory_table(3, Rational(1, 20)).size(), 231u);
  EXPECT_THROW(theory_table(3, Rational(3, 7)), std::invalid_argument);
}
