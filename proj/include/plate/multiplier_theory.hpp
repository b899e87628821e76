#pragma once

// Exact exponent bookkeeping for L^p - L^q estimates of the plate equation
// with mass, u_tt + Δ²u + u = 0.  Every quantity is a function of the
// reciprocals 1/p and 1/q only, so p = ∞ is represented by a zero reciprocal.

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plate {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

inline Rational positive_part(const Rational& x) { return x > 0 ? x : Rational(0); }
/// Non-positive part min(x, 0).
inline Rational negative_part(const Rational& x) { return x < 0 ? x : Rational(0); }

/// Parses "3/4", "2", "-1/2" or a finite decimal such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) fail();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::size_t used_num = 0, used_den = 0;
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      const auto a = std::stoll(num, &used_num);
      const auto b = std::stoll(den, &used_den);
      if (used_num != num.size() || used_den != den.size() || b == 0) fail();
      return Rational(a, b);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      const bool negative = !s.empty() && s[0] == '-';
      const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      if (frac.empty() || frac.size() > 15 ||
          frac.find_first_not_of("0123456789") != std::string::npos)
        fail();
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      std::size_t used = 0;
      const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoll(whole, &used);
      if (!(whole.empty() || whole == "-" || whole == "+") && used != whole.size()) fail();
      const std::int64_t f = std::stoll(frac);
      const std::int64_t magnitude = (w < 0 ? -w : w) * den + f;
      return Rational(negative ? -magnitude : magnitude, den);
    }
    std::size_t used = 0;
    const auto a = std::stoll(s, &used);
    if (used != s.size()) fail();
    return Rational(a);
  } catch (const std::invalid_argument&) {
    fail();
  } catch (const std::out_of_range&) {
    fail();
  }
  return {};
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

/// A pair of Lebesgue exponents 1 ≤ p ≤ q ≤ ∞ stored as reciprocals.
class LebesguePair {
 public:
  LebesguePair(Rational p_inv, Rational q_inv) : p_inv_(p_inv), q_inv_(q_inv) {
    if (p_inv_ < 0 || p_inv_ > 1 || q_inv_ < 0 || q_inv_ > 1)
      throw std::invalid_argument("Lebesgue reciprocals must lie in [0,1]: 1/p=" + to_string(p_inv_) +
                                  ", 1/q=" + to_string(q_inv_));
    if (p_inv_ < q_inv_)
      throw std::invalid_argument("pair requires p <= q (1/p >= 1/q): 1/p=" + to_string(p_inv_) +
                                  ", 1/q=" + to_string(q_inv_));
  }

  /// Builds from exponents; a zero argument is not allowed, use from_reciprocals for ∞.
  static LebesguePair from_exponents(Rational p, Rational q) {
    if (p < 1 || q < 1) throw std::invalid_argument("exponents must be >= 1");
    return {Rational(1) / p, Rational(1) / q};
  }

  const Rational& p_inv() const { return p_inv_; }
  const Rational& q_inv() const { return q_inv_; }

  /// (q', p'), the pair related by duality of multiplier norms.
  LebesguePair dual() const { return {1 - q_inv_, 1 - p_inv_}; }

  bool operator==(const LebesguePair&) const = default;

 private:
  Rational p_inv_;
  Rational q_inv_;
};

inline std::string exponent_label(const Rational& reciprocal) {
  if (reciprocal == Rational(0)) return "inf";
  return to_string(Rational(1) / reciprocal);
}

inline std::ostream& operator<<(std::ostream& os, const LebesguePair& pair) {
  return os << '(' << exponent_label(pair.p_inv()) << ',' << exponent_label(pair.q_inv()) << ')';
}

enum class Admissibility { StrictInterior, BoundaryAdmissible, Inadmissible };

inline std::string_view to_string(Admissibility a) {
  switch (a) {
    case Admissibility::StrictInterior: return "StrictInterior";
    case Admissibility::BoundaryAdmissible: return "BoundaryAdmissible";
    case Admissibility::Inadmissible: return "Inadmissible";
  }
  return "?";
}

inline Rational d_pl(const LebesguePair& pair, int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  const Rational a = pair.p_inv(), b = pair.q_inv();
  const Rational half(1, 2);
  return Rational(n, 2) * (a - b) + n * std::max(half - a, b - half);
}

/// Mass-induced correction to the large-time exponent; nonnegative, and the two
/// branches agree on the dual line 1/p + 1/q = 1.
inline Rational beta(const LebesguePair& pair) {
  const Rational a = pair.p_inv(), b = pair.q_inv();
  if (a + b >= 1) return positive_part(a + 3 * b - 2);
  return -negative_part(3 * a + b - 2);
}

/// Power of the (log t) factor: 1/2 exactly at (p,q) = (1,3) and (3/2,∞).
inline Rational gamma(const LebesguePair& pair) {
  const bool one_three = pair.p_inv() == Rational(1) && pair.q_inv() == Rational(1, 3);
  const bool three_halves_inf = pair.p_inv() == Rational(2, 3) && pair.q_inv() == Rational(0);
  return (one_three || three_halves_inf) ? Rational(1, 2) : Rational(0);
}

inline Admissibility classify(const LebesguePair& pair, int n) {
  const Rational d = d_pl(pair, n);
  if (d < 1) return Admissibility::StrictInterior;
  const Rational half(1, 2);
  // 1 < p <= 2 <= q < ∞
  const bool endpoint_range = pair.p_inv() < 1 && pair.p_inv() >= half && pair.q_inv() <= half && pair.q_inv() > 0;
  if (d == Rational(1) && endpoint_range) return Admissibility::BoundaryAdmissible;
  return Admissibility::Inadmissible;
}

struct TheoryPrediction {
  LebesguePair pair;
  int n = 1;
  Rational d_pl{};
  Rational beta{};
  Rational gamma{};
  Rational large_time_exponent{};  // power of t for t >= 1
  Rational small_time_exponent{};  // power of t for t in (0,1)
  Admissibility admissibility = Admissibility::Inadmissible;
  /// Log-factor pair at d_pl >= 1: the estimate's form there is not known.
  bool log_factor_unknown = false;
};

inline TheoryPrediction predict(const LebesguePair& pair, int n) {
  TheoryPrediction out{.pair = pair, .n = n};
  out.d_pl = d_pl(pair, n);
  out.beta = beta(pair);
  out.gamma = gamma(pair);
  const Rational gap = pair.p_inv() - pair.q_inv();
  out.large_time_exponent = -Rational(n, 4) * (gap - out.beta);
  out.small_time_exponent = 1 - Rational(n, 2) * gap;
  out.admissibility = classify(pair, n);
  out.log_factor_unknown = out.gamma != Rational(0) && out.d_pl >= 1;
  return out;
}

/// Zones of the large-time exponent in the (1/p, 1/q) square:
///   QControlled  1/p + 1/q ≥ 1, 1/p + 3/q ≥ 2:  −n/2 + n/q
///   PControlled  1/p + 1/q ≤ 1, 3/p + 1/q ≤ 2:  n/2 − n/p
///   Gap          otherwise:                    −(n/4)(1/p − 1/q)
/// On shared edges the formulas coincide; QControlled is reported first.
enum class DecayZone { QControlled, PControlled, Gap };

inline std::string_view to_string(DecayZone z) {
  switch (z) {
    case DecayZone::QControlled: return "q-controlled";
    case DecayZone::PControlled: return "p-controlled";
    case DecayZone::Gap: return "gap";
  }
  return "?";
}

inline DecayZone decay_zone(const LebesguePair& pair) {
  const Rational a = pair.p_inv(), b = pair.q_inv();
  if (a + b >= 1 && a + 3 * b >= 2) return DecayZone::QControlled;
  if (a + b <= 1 && 3 * a + b <= 2) return DecayZone::PControlled;
  return DecayZone::Gap;
}

inline Rational zone_exponent(const LebesguePair& pair, int n) {
  switch (decay_zone(pair)) {
    case DecayZone::QControlled: return -Rational(n, 2) + n * pair.q_inv();
    case DecayZone::PControlled: return Rational(n, 2) - n * pair.p_inv();
    case DecayZone::Gap: break;
  }
  return -Rational(n, 4) * (pair.p_inv() - pair.q_inv());
}

/// Remark-style non-singularity of the L¹-L^q estimate as t → 0.
inline bool nonsingular_small_time(const Rational& q_inv, int n) {
  if (q_inv < 0 || q_inv > 1) throw std::invalid_argument("1/q must lie in [0,1]");
  return 1 - Rational(n, 2) * (1 - q_inv) >= 0;
}

struct CriticalExponents {
  Rational alpha_c;                               // 1 + 4/n
  Rational alpha_tilde_c;                         // 2 + 2/n
  std::optional<Rational> sobolev_upper;          // (n+4)/(n-4), empty = ∞ for n <= 4
  std::optional<Rational> nonexistence_threshold; // (n+2m)/(n-2m), empty when n <= 2m
};

inline CriticalExponents critical_exponents(int n, const Rational& m) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  if (m < 1 || m > 2) throw std::invalid_argument("m must lie in [1,2]");
  CriticalExponents c;
  c.alpha_c = 1 + Rational(4, n);
  c.alpha_tilde_c = 2 + Rational(2, n);
  if (n > 4) c.sobolev_upper = Rational(n + 4, n - 4);
  if (Rational(n) > 2 * m) c.nonexistence_threshold = (n + 2 * m) / (n - 2 * m);
  return c;
}

struct TheoryRow {
  int n;
  Rational p_inv;
  Rational q_inv;
  TheoryPrediction prediction;
};

/// All valid pairs (1/p ≥ 1/q) on the grid {0, step, 2 step, ..., 1}.
inline std::vector<TheoryRow> theory_table(int n, const Rational& step) {
  if (step <= 0 || step > 1) throw std::invalid_argument("grid step must lie in (0,1]");
  const Rational count_r = Rational(1) / step;
  if (count_r.denominator() != 1) throw std::invalid_argument("grid step must divide 1");
  const auto count = count_r.numerator();
  std::vector<TheoryRow> rows;
  for (std::int64_t i = 0; i <= count; ++i) {
    for (std::int64_t j = 0; j <= i; ++j) {
      const Rational a = step * i, b = step * j;
      rows.push_back({n, a, b, predict(LebesguePair(a, b), n)});
    }
  }
  return rows;
}

}  // namespace plate
