#pragma once

// Batch experiment runner.  Each subcommand reads a flat INI file (keys either
// at top level or in a section named after the subcommand), accepts
// --set key=value overrides, writes CSV files atomically into --out and prints a
// one-line summary per verdict.
//
// Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 configuration error.

#include "plate/decay_lab.hpp"
#include "plate/field_io.hpp"
#include "plate/multiplier_theory.hpp"
#include "plate/nonexistence.hpp"
#include "plate/parallel.hpp"
#include "plate/radial_oscillatory.hpp"
#include "plate/semilinear.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plate {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment outcome that is not a configuration problem (exit code 1).
class ExperimentFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Key/value view over the INI file plus command-line overrides.  Every key
/// must be consumed; leftovers are reported as unknown.
class ExperimentConfig {
 public:
  ExperimentConfig(const std::string& command, const std::optional<std::string>& path,
                   const std::vector<std::string>& overrides) {
    if (path) {
      boost::property_tree::ptree tree;
      try {
        boost::property_tree::ini_parser::read_ini(*path, tree);
      } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("cannot read config '" + *path + "': " + e.message() + " (line " +
                          std::to_string(e.line()) + ")");
      }
      for (const auto& [key, node] : tree) {
        if (node.empty()) {
          values_[key] = trim(node.data());
        } else if (key == command) {
          for (const auto& [k, v] : node) {
            if (!v.empty()) throw ConfigError("nested key '" + command + "." + k + "' is not allowed");
            values_[k] = trim(v.data());
          }
        } else {
          throw ConfigError("unknown config section [" + key + "] for subcommand " + command);
        }
      }
    }
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + o + "'");
      values_[trim(o.substr(0, eq))] = trim(o.substr(eq + 1));
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string text(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
  }
  std::string text(const std::string& key, const std::string& fallback) { return has(key) ? text(key) : fallback; }

  double real(const std::string& key) { return parse_real(key, text(key)); }
  double real(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

  long integer(const std::string& key) {
    const auto s = text(key);
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("key '" + key + "': expected an integer, got '" + s + "'");
  }
  long integer(const std::string& key, long fallback) { return has(key) ? integer(key) : fallback; }

  Rational rational(const std::string& key) {
    const auto s = text(key);
    try {
      return parse_rational(s);
    } catch (const std::exception& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  Rational rational(const std::string& key, const Rational& fallback) { return has(key) ? rational(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto s = text(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + s + "'");
  }

  std::vector<double> reals(const std::string& key) {
    std::vector<double> out;
    for (const auto& item : split(text(key), ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
  }

  std::vector<Rational> rationals(const std::string& key) {
    std::vector<Rational> out;
    for (const auto& item : split(text(key), ',')) {
      try {
        out.push_back(parse_rational(item));
      } catch (const std::exception& e) {
        throw ConfigError("key '" + key + "': " + e.what());
      }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
  }

  /// Exponent reciprocal from "inf" or a rational exponent ≥ 1.
  static Rational exponent_reciprocal(const std::string& key, const std::string& s) {
    if (s == "inf") return Rational(0);
    Rational p;
    try {
      p = parse_rational(s);
    } catch (const std::exception& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
    if (p < 1) throw ConfigError("key '" + key + "': exponent " + s + " is below 1");
    return Rational(1) / p;
  }

  /// "p:q" items separated by commas, e.g. "1:4, 4/3:4, 3/2:inf".
  std::vector<LebesguePair> pairs(const std::string& key) {
    std::vector<LebesguePair> out;
    for (const auto& item : split(text(key), ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw ConfigError("key '" + key + "': expected p:q, got '" + item + "'");
      try {
        out.emplace_back(exponent_reciprocal(key, parts[0]), exponent_reciprocal(key, parts[1]));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("key '" + key + "': " + e.what());
      }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
  }

  /// Throws for keys that were supplied but never read.
  void finish() const {
    for (const auto& [k, v] : values_)
      if (!used_.count(k)) throw ConfigError("unknown config key '" + k + "'");
  }

  /// Resolved key/value pairs that were read, sorted.
  std::string resolved(const std::string& command) const {
    std::ostringstream os;
    os << '[' << command << "]\n";
    for (const auto& [k, v] : values_)
      if (used_.count(k)) os << k << " = " << v << '\n';
    return os.str();
  }

 private:
  static double parse_real(const std::string& key, const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("key '" + key + "': expected a finite number, got '" + s + "'");
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

/// Writes via a temporary file in the same directory followed by rename.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << content;
    if (!os.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string fmt(double v) { return format_double(v); }
inline std::string fmt(const Rational& r) { return to_string(r); }

struct Common {
  std::optional<std::string> config;
  std::string out = ".";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
};

struct Context {
  ExperimentConfig cfg;
  std::filesystem::path out;
  unsigned jobs;
  std::uint64_t seed;
  std::ostream& log;
  bool pass = true;

  void write(const std::string& name, const CsvTable& table) { write_atomic(out / name, table.str()); }
  void verdict(const std::string& label, bool ok, const std::string& detail) {
    log << (ok ? "PASS " : "FAIL ") << label << ": " << detail << '\n';
    pass = pass && ok;
  }
};

inline DatumSpec read_datum(ExperimentConfig& cfg, std::uint64_t seed, const std::string& prefix = "") {
  DatumSpec d;
  try {
    d.kind = parse_datum_kind(cfg.text(prefix + "datum"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("key '" + prefix + "datum': " + e.what());
  }
  d.width = cfg.real(prefix + "width", d.width);
  d.radius = cfg.real(prefix + "radius", d.radius);
  d.k = cfg.real(prefix + "k", d.k);
  d.r_lo = cfg.real(prefix + "r_lo", d.r_lo);
  d.r_hi = cfg.real(prefix + "r_hi", d.r_hi);
  d.band_limit = cfg.real(prefix + "band_limit", d.band_limit);
  d.amplitude = cfg.real(prefix + "amplitude", d.amplitude);
  d.seed = static_cast<std::uint64_t>(cfg.integer(prefix + "datum_seed", static_cast<long>(seed)));
  return d;
}

/// Spectral extent of a datum when it does not depend on the grid.
inline std::optional<double> intrinsic_band(const DatumSpec& d) {
  switch (d.kind) {
    case DatumKind::Gaussian: return std::sqrt(2.0 * 37.0) / d.width;
    case DatumKind::SmoothBump:
      if (d.band_limit > 0.0) return d.band_limit;
      return std::nullopt;
    case DatumKind::SingularPower: return std::nullopt;
    case DatumKind::BandLimitedRadial: return d.r_hi;
    case DatumKind::RandomBandLimited:
    case DatumKind::LowFrequencyPower: return d.band_limit;
  }
  return std::nullopt;
}

inline GridGeometry read_geometry(ExperimentConfig& cfg, const DatumSpec* datum, double t_max) {
  GridGeometry g;
  g.n = static_cast<int>(cfg.integer("n"));
  const long points = cfg.integer("points");
  if (points < 4) throw ConfigError("key 'points': must be a power of two >= 4");
  g.points_per_axis = static_cast<std::size_t>(points);
  if (cfg.has("half_width")) {
    g.half_width = cfg.real("half_width");
  } else {
    const auto band = datum ? intrinsic_band(*datum) : std::nullopt;
    if (!band) throw ConfigError("missing required key 'half_width' (datum has no intrinsic band limit)");
    g.half_width = wraparound_half_width(datum->x_support(), *band, t_max);
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  return g;
}

inline std::string pair_label(const LebesguePair& p) {
  return exponent_label(p.p_inv()) + ":" + exponent_label(p.q_inv());
}

// ---------------------------------------------------------------------------

inline void theory_table_command(Context& ctx) {
  const int n = static_cast<int>(ctx.cfg.integer("n"));
  const Rational step = ctx.cfg.rational("grid", Rational(1, 20));
  ctx.cfg.finish();
  if (n < 1) throw ConfigError("key 'n': must be >= 1");
  std::vector<TheoryRow> rows;
  try {
    rows = theory_table(n, step);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key 'grid': ") + e.what());
  }
  CsvTable t{{"n", "p_inv", "q_inv", "d_pl", "beta", "gamma", "large_time_exponent", "small_time_exponent", "zone",
              "zone_exponent", "admissibility"},
             {}};
  std::size_t mismatches = 0;
  std::map<std::string, std::size_t> counts;
  for (const auto& r : rows) {
    const auto& pr = r.prediction;
    const LebesguePair pair(r.p_inv, r.q_inv);
    const auto zone_exp = zone_exponent(pair, n);
    if (zone_exp != pr.large_time_exponent) ++mismatches;
    ++counts[std::string(to_string(pr.admissibility))];
    t.rows.push_back({std::to_string(n), fmt(r.p_inv), fmt(r.q_inv), fmt(pr.d_pl), fmt(pr.beta), fmt(pr.gamma),
                      fmt(pr.large_time_exponent), fmt(pr.small_time_exponent), std::string(to_string(decay_zone(pair))),
                      fmt(zone_exp), std::string(to_string(pr.admissibility))});
  }
  ctx.write("theory_table.csv", t);
  std::string detail = std::to_string(rows.size()) + " pairs";
  for (const auto& [k, c] : counts) detail += ", " + k + "=" + std::to_string(c);
  ctx.verdict("zone exponents match the beta formula", mismatches == 0, detail);
}

inline void linear_decay_command(Context& ctx) {
  auto& cfg = ctx.cfg;
  const auto datum = read_datum(cfg, ctx.seed);
  const auto pairs = cfg.pairs("pairs");
  const double t_min = cfg.real("t_min"), t_max = cfg.real("t_max");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw ConfigError("keys 't_min'/'t_max': need 0 < t_min < t_max");
  const long samples = cfg.integer("samples", 40);
  if (samples < 2) throw ConfigError("key 'samples': need at least 2");
  const bool lock = cfg.boolean("phase_lock", t_min >= 10.0);
  const std::string regime = cfg.text("regime", t_min >= 1.0 ? "large" : "small");
  if (regime != "large" && regime != "small") throw ConfigError("key 'regime': expected large|small");
  const auto geometry = read_geometry(cfg, &datum, t_max);
  const double window_lo = cfg.real("window_min", t_min), window_hi = cfg.real("window_max", t_max);
  const double tol = cfg.real("tolerance", geometry.n == 1 ? 0.03 : 0.05);
  const bool wrap = cfg.boolean("enforce_wraparound", true);
  cfg.finish();

  const auto times = lock ? phase_locked_times(t_min, t_max, static_cast<std::size_t>(samples))
                          : log_spaced_times(t_min, t_max, static_cast<std::size_t>(samples));
  DecaySeries series;
  try {
    series = run_decay(datum, Grid::make(geometry), pairs, times, wrap, ctx.jobs);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  CsvTable s{{"t", "q_inv", "norm"}, {}};
  for (const auto& [q, norms] : series.norms)
    for (std::size_t i = 0; i < series.times.size(); ++i) s.rows.push_back({fmt(series.times[i]), fmt(q), fmt(norms[i])});
  ctx.write("decay_series.csv", s);

  CsvTable f{{"p", "q", "n", "regime", "predicted", "fitted", "r_squared", "verdict", "gamma", "fitted_with_log",
              "envelope_constant"},
             {}};
  for (const auto& pair : pairs) {
    const auto pr = predict(pair, geometry.n);
    const bool large = regime == "large";
    SlopeFit fit;
    try {
      fit = fit_slope(series, pair.q_inv(), window_lo, window_hi, large ? pr.gamma : Rational(0));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const auto v = verdict(fit, pr, tol, large);
    const auto predicted = large ? pr.large_time_exponent : pr.small_time_exponent;
    f.rows.push_back({exponent_label(pair.p_inv()), exponent_label(pair.q_inv()), std::to_string(geometry.n), regime,
                      fmt(predicted), fmt(fit.exponent), fmt(fit.r_squared), std::string(to_string(v)), fmt(pr.gamma),
                      fit.with_log_factor ? fmt(fit.with_log_factor->slope) : "", fmt(envelope_constant(series, pr))});
    ctx.verdict("slope " + pair_label(pair), v != Verdict::Violation,
                "predicted " + to_string(predicted) + " fitted " + fmt(fit.exponent) + " -> " +
                    std::string(to_string(v)));
  }
  ctx.write("fit_table.csv", f);
}

inline void optimality_command(Context& ctx) {
  auto& cfg = ctx.cfg;
  const int n = static_cast<int>(cfg.integer("n", 1));
  const double a = cfg.real("a");
  const double r_lo = cfg.real("r_lo"), r_hi = cfg.real("r_hi");
  const std::string shape = cfg.text("profile", "smooth");
  const double t_min = cfg.real("t_min"), t_max = cfg.real("t_max");
  OptimalityOptions opt;
  opt.points_per_decade = static_cast<int>(cfg.integer("per_decade", opt.points_per_decade));
  opt.refinements = static_cast<int>(cfg.integer("refinements", opt.refinements));
  const double tol = cfg.real("tolerance", 0.05);
  cfg.finish();
  if (n < 1 || n > 3) throw ConfigError("key 'n': radial kernels need n in 1..3");
  if (shape != "smooth" && shape != "polynomial") throw ConfigError("key 'profile': expected smooth|polynomial");
  if (opt.points_per_decade < 1 || opt.refinements < 1) throw ConfigError("per_decade and refinements must be >= 1");

  Annulus ann;
  std::vector<double> grid;
  std::optional<RadialProfile> profile;
  try {
    ann = choose_annulus(a);
    grid = geometric_grid(t_min, t_max, opt.points_per_decade);
    profile = shape == "smooth" ? RadialProfile::smooth_bump(r_lo, r_hi) : RadialProfile::polynomial_bump(r_lo, r_hi);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  std::vector<std::optional<OptimalityRow>> slots(grid.size());
  parallel_for(grid.size(), ctx.jobs, [&](std::size_t i) { slots[i] = optimality_row(*profile, ann, grid[i], n, opt); });
  std::vector<OptimalityRow> rows;
  for (const auto& s : slots)
    if (s) rows.push_back(*s);
  CsvTable t{{"t_k", "x_star", "value", "scaled", "sine"}, {}};
  for (const auto& r : rows) t.rows.push_back({fmt(r.t), fmt(r.x_star), fmt(r.value), fmt(r.scaled), fmt(r.sine)});
  ctx.write("optimality.csv", t);
  if (rows.size() < 2) {
    ctx.verdict("optimality selection", false, std::to_string(rows.size()) + " admissible times (grid too sparse?)");
    return;
  }
  std::vector<double> ts, vs;
  double min_scaled = rows.front().scaled;
  for (const auto& r : rows) {
    ts.push_back(r.t);
    vs.push_back(r.value);
    min_scaled = std::min(min_scaled, r.scaled);
  }
  const auto fit = power_law_fit(ts, vs);
  ctx.verdict("annulus max slope", std::abs(fit.slope + 0.5 * n) <= tol,
              "fitted " + fmt(fit.slope) + " vs " + fmt(-0.5 * n) + " over " + std::to_string(rows.size()) + " times");
  ctx.verdict("scaled lower bound", min_scaled > 0.0, "min value*t^{n/2} = " + fmt(min_scaled));
}

inline void semilinear_command(Context& ctx) {
  auto& cfg = ctx.cfg;
  SemilinearConfig sc;
  sc.u1 = read_datum(cfg, ctx.seed);
  sc.alpha = cfg.real("alpha");
  sc.horizon = cfg.real("horizon");
  sc.dt = cfg.real("dt", sc.dt);
  sc.geometry = read_geometry(cfg, &sc.u1, sc.horizon);
  try {
    sc.quadrature = parse_quadrature(cfg.text("quadrature", "trapezoid"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("key 'quadrature': ") + e.what());
  }
  sc.coefficient = cfg.real("coefficient", 1.0);
  sc.blowup_threshold = cfg.real("blowup_threshold", 0.0);
  sc.enforce_wraparound = cfg.boolean("enforce_wraparound", true);
  sc.q_invs.clear();
  for (const auto& item : split(cfg.text("q", "inf,2"), ','))
    sc.q_invs.push_back(ExperimentConfig::exponent_reciprocal("q", item));
  const long samples = cfg.integer("samples", 40);
  const double sample_min = cfg.real("sample_min", 1.0);
  const bool lock = cfg.boolean("phase_lock", true);
  const std::string eps_text = cfg.text("epsilon");
  const int picard = static_cast<int>(cfg.integer("picard_iterations", 0));
  std::optional<double> expect_slope;
  if (cfg.has("expect_slope")) expect_slope = cfg.real("expect_slope");
  const double tol = cfg.real("tolerance", 0.07);
  const double fit_lo = cfg.real("fit_min", sc.horizon / 10.0), fit_hi = cfg.real("fit_max", sc.horizon);
  double eps_hi = 0.0, bisect_horizon = 0.0, ratio_limit = 2.0;
  int bisect_iterations = 0;
  if (eps_text == "bisect") {
    eps_hi = cfg.real("eps_hi");
    bisect_iterations = static_cast<int>(cfg.integer("bisect_iterations", 6));
    bisect_horizon = cfg.real("bisect_horizon", sc.horizon);
    ratio_limit = cfg.real("ratio_limit", 2.0);
  }
  cfg.finish();

  if (picard > 0) {
    try {
      sc.epsilon = std::stod(eps_text);
      const auto rep = contraction_diagnostic(sc, picard);
      CsvTable t{{"iteration", "distance", "ratio"}, {}};
      for (std::size_t j = 0; j < rep.distances.size(); ++j)
        t.rows.push_back({std::to_string(j + 1), fmt(rep.distances[j]), j > 0 && j - 1 < rep.ratios.size() ? fmt(rep.ratios[j - 1]) : ""});
      ctx.write("contraction.csv", t);
      bool below_one = true;
      for (double r : rep.ratios) below_one = below_one && r < 1.0;
      ctx.verdict("picard contraction", !rep.diverged && below_one,
                  std::to_string(rep.ratios.size()) + " ratios" + (rep.diverged ? ", diverged" : "") +
                      (rep.reached_roundoff ? ", reached roundoff" : ""));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return;
  }

  try {
    if (lock) {
      sc.sample_times = phase_locked_times(sample_min, sc.horizon, static_cast<std::size_t>(samples));
      while (!sc.sample_times.empty() && sc.sample_times.back() > sc.horizon) sc.sample_times.pop_back();
    } else {
      sc.sample_times = log_spaced_times(sample_min, sc.horizon, static_cast<std::size_t>(samples));
    }
    if (eps_text == "bisect") {
      auto probe = sc;
      probe.horizon = bisect_horizon;
      probe.sample_times.clear();
      for (double t : sc.sample_times)
        if (t <= bisect_horizon) probe.sample_times.push_back(t);
      const auto search = bisect_epsilon(probe, eps_hi, bisect_iterations, ratio_limit);
      sc.epsilon = search.epsilon0;
      ctx.log << "epsilon0 = " << fmt(search.epsilon0) << " after " << search.tested.size() << " runs\n";
    } else {
      sc.epsilon = std::stod(eps_text);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto rec = run(sc);
  CsvTable t{{"t", "q_inv", "norm", "weighted"}, {}};
  for (const auto& q : sc.q_invs)
    for (std::size_t i = 0; i < rec.series.times.size(); ++i)
      t.rows.push_back({fmt(rec.series.times[i]), fmt(q), fmt(rec.series.norms.at(q)[i]), fmt(rec.weighted.at(q)[i])});
  ctx.write("semilinear_series.csv", t);

  std::string slope = "";
  std::optional<double> fitted;
  try {
    if (rec.status == RunStatus::CompletedGlobal) {
      fitted = fit_power_law(rec.series.times, rec.series.norms.at(sc.q_invs.front()), fit_lo, fit_hi).exponent;
      slope = fmt(*fitted);
    }
  } catch (const std::invalid_argument&) {
  }
  CsvTable summary{{"status", "epsilon", "final_time", "weighted_sup", "slope"},
                   {{std::string(to_string(rec.status)), fmt(sc.epsilon), fmt(rec.final_time),
                     fmt(rec.weighted_sup.at(sc.q_invs.front())), slope}}};
  ctx.write("semilinear_summary.csv", summary);
  ctx.verdict("run status", rec.status != RunStatus::QuadratureFailure,
              std::string(to_string(rec.status)) + (rec.message.empty() ? "" : " (" + rec.message + ")"));
  if (expect_slope) {
    const bool ok = fitted && std::abs(*fitted - *expect_slope) <= tol;
    ctx.verdict("sup-norm slope", ok, "fitted " + (fitted ? fmt(*fitted) : std::string("n/a")) + " vs " + fmt(*expect_slope));
  }
}

inline void nonexistence_command(Context& ctx) {
  auto& cfg = ctx.cfg;
  std::vector<long> ns;
  for (const auto& r : cfg.rationals("n_values")) {
    if (r.denominator() != 1 || r < 1) throw ConfigError("key 'n_values': dimensions must be positive integers");
    ns.push_back(r.numerator());
  }
  const auto ms = cfg.rationals("m_values");
  const auto alphas = cfg.rationals("alpha_values");
  std::vector<std::pair<int, double>> pairings;
  if (cfg.has("pairings")) {
    for (const auto& item : split(cfg.text("pairings"), ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw ConfigError("key 'pairings': expected n:k, got '" + item + "'");
      try {
        pairings.emplace_back(std::stoi(parts[0]), std::stod(parts[1]));
      } catch (const std::exception&) {
        throw ConfigError("key 'pairings': bad item '" + item + "'");
      }
    }
  }
  const double tau_min = cfg.real("tau_min", 1e-4), tau_max = cfg.real("tau_max", 1e-1);
  const long tau_count = cfg.integer("tau_count", 13);
  const double tol = cfg.real("tolerance", 0.02);
  cfg.finish();

  CsvTable v{{"n", "m", "alpha", "threshold", "window_lo", "window_hi", "k", "exponent", "verdict"}, {}};
  std::size_t inconsistent = 0;
  for (long n : ns)
    for (const auto& m : ms)
      for (const auto& alpha : alphas) {
        NonexistenceVerdict r;
        try {
          r = exponent_conditions(static_cast<int>(n), m, alpha);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        const bool forces = r.outcome == NonexistenceOutcome::ForcesLambdaZero;
        const bool expected = r.threshold && alpha > *r.threshold;
        if (forces != expected) ++inconsistent;
        v.rows.push_back({std::to_string(n), fmt(m), fmt(alpha), r.threshold ? fmt(*r.threshold) : "undefined",
                          fmt(r.window_lo), fmt(r.window_hi), r.k ? fmt(*r.k) : "", r.exponent ? fmt(*r.exponent) : "",
                          std::string(to_string(r.outcome))});
      }
  ctx.write("verdicts.csv", v);
  ctx.verdict("verdicts follow the threshold", inconsistent == 0, std::to_string(v.rows.size()) + " cases");

  if (pairings.empty()) return;
  std::vector<double> taus;
  try {
    taus = log_spaced_times(tau_min, tau_max, static_cast<std::size_t>(tau_count));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  CsvTable p{{"n", "k", "tau", "pairing"}, {}};
  CsvTable fits{{"n", "k", "expected", "fitted"}, {}};
  for (const auto& [n, k] : pairings) {
    std::vector<double> values(taus.size());
    try {
      parallel_for(taus.size(), ctx.jobs, [&](std::size_t i) { values[i] = datum_pairing(k, n, taus[i]); });
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    for (std::size_t i = 0; i < taus.size(); ++i)
      p.rows.push_back({std::to_string(n), fmt(k), fmt(taus[i]), fmt(values[i])});
    const double slope = power_law_fit(taus, values).slope;
    const double expected = 0.5 * (n - k);
    fits.rows.push_back({std::to_string(n), fmt(k), fmt(expected), fmt(slope)});
    ctx.verdict("pairing scaling n=" + std::to_string(n) + " k=" + fmt(k), std::abs(slope - expected) <= tol,
                "fitted " + fmt(slope) + " vs " + fmt(expected));
  }
  ctx.write("pairing.csv", p);
  ctx.write("pairing_fit.csv", fits);
}

inline void radial_crosscheck_command(Context& ctx) {
  auto& cfg = ctx.cfg;
  DatumSpec d;
  d.kind = DatumKind::BandLimitedRadial;
  d.r_lo = cfg.real("r_lo");
  d.r_hi = cfg.real("r_hi");
  const auto times = cfg.reals("times");
  const auto xs = cfg.reals("xs");
  const double t_max = *std::max_element(times.begin(), times.end());
  const auto geometry = read_geometry(cfg, &d, t_max);
  const double tol = cfg.real("tolerance", 1e-4);
  cfg.finish();
  if (geometry.n > 3) throw ConfigError("key 'n': radial kernels need n in 1..3");
  for (double t : times)
    if (!(t > 0.0)) throw ConfigError("key 'times': must be positive");
  const auto grid = Grid::make(geometry);
  SpectralField f = SpectralField::zero(grid);
  try {
    check_wraparound(d, geometry, t_max);
    f = make_datum(d, grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto profile = RadialProfile::smooth_bump(d.r_lo, d.r_hi);
  const std::size_t N = geometry.points_per_axis;
  const double h = geometry.spacing();
  struct Sample {
    double t, x, fft, quad, rel;
  };
  std::vector<Sample> out(times.size() * xs.size());
  std::vector<SpectralField> fields;
  for (double t : times) fields.push_back(solve_from_rest(f, t));
  parallel_for(out.size(), ctx.jobs, [&](std::size_t s) {
    const std::size_t ti = s / xs.size(), xi = s % xs.size();
    // Grid point on the first axis nearest to xs[xi]; other coordinates 0.
    const long j = std::lround(xs[xi] / h);
    if (j <= 0 || static_cast<std::size_t>(j) >= N / 2) throw ConfigError("key 'xs': point outside (0, L)");
    std::size_t flat = 0;
    for (int a = 0; a < geometry.n; ++a) flat = flat * N + (a == 0 ? N / 2 + static_cast<std::size_t>(j) : N / 2);
    // axis 0 is the slowest index
    const double x = grid->coordinate(flat, 0);
    const double a = fields[ti].values()[flat];
    const double b = radial_convolution(profile, times[ti], x, geometry.n);
    out[s] = {times[ti], x, a, b, std::abs(a - b) / std::abs(b)};
  });
  CsvTable t{{"n", "t", "x", "fft", "quadrature", "rel_error"}, {}};
  double worst = 0.0;
  for (const auto& s : out) {
    t.rows.push_back({std::to_string(geometry.n), fmt(s.t), fmt(s.x), fmt(s.fft), fmt(s.quad), fmt(s.rel)});
    worst = std::max(worst, s.rel);
  }
  ctx.write("crosscheck.csv", t);
  ctx.verdict("fft vs bessel quadrature", worst <= tol, "max relative error " + fmt(worst) + " over " +
                                                           std::to_string(out.size()) + " samples");
}

}  // namespace cli_detail

/// Runs the CLI; returns the process exit code.
inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli_detail;
  CLI::App app{"plate: spectral experiments for u_tt + Δ²u + u = f(u)"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config, "INI file; keys at top level or in [<subcommand>]");
  app.add_option("--out", common.out, "output directory for CSV files")->capture_default_str();
  app.add_option("--jobs", common.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", common.seed, "seed for randomized data")->capture_default_str();
  app.add_option("--set", common.overrides, "override a config key: key=value (repeatable)");

  struct Entry {
    CLI::App* sub;
    void (*fn)(Context&);
  };
  std::vector<Entry> entries;
  std::optional<long> tt_n;
  std::optional<std::string> tt_grid;

  auto* tt = app.add_subcommand("theory-table", "exponent tables over the (1/p,1/q) square");
  tt->add_option("--n", tt_n, "dimension");
  tt->add_option("--grid", tt_grid, "grid step of 1/p and 1/q, e.g. 0.05 or 1/20");
  tt->footer(
      "keys: n, grid (default 1/20)\n"
      "theory_table.csv: n,p_inv,q_inv,d_pl,beta,gamma,large_time_exponent,small_time_exponent,zone,zone_exponent,"
      "admissibility (exact rationals)");
  entries.push_back({tt, theory_table_command});

  auto* ld = app.add_subcommand("linear-decay", "L^p-L^q decay of the linear solution with fitted slopes");
  ld->footer(
      "keys: n, points, half_width (optional for band-limited data), datum, width, radius, k, r_lo, r_hi, band_limit,\n"
      "      amplitude, datum_seed, pairs (p:q list, q may be inf), t_min, t_max, samples, phase_lock, regime\n"
      "      (large|small), window_min, window_max, tolerance, enforce_wraparound\n"
      "decay_series.csv: t,q_inv,norm\n"
      "fit_table.csv: p,q,n,regime,predicted,fitted,r_squared,verdict,gamma,fitted_with_log,envelope_constant");
  entries.push_back({ld, linear_decay_command});

  auto* op = app.add_subcommand("optimality", "annulus maxima of K(t)*f along times with sin(t h(r0)+pi/4) >= 1/2");
  op->footer(
      "keys: n, a, r_lo, r_hi, profile (smooth|polynomial), t_min, t_max, per_decade, refinements, tolerance\n"
      "optimality.csv: t_k,x_star,value,scaled,sine");
  entries.push_back({op, optimality_command});

  auto* sl = app.add_subcommand("semilinear", "u_tt + Δ²u + u = |u|^alpha by exponential integrators");
  sl->footer(
      "keys: n, points, half_width, datum keys as linear-decay, alpha, epsilon (number or bisect), eps_hi,\n"
      "      bisect_iterations, bisect_horizon, ratio_limit, dt, horizon, quadrature (trapezoid|simpson), coefficient,\n"
      "      blowup_threshold, q (list, inf allowed), samples, sample_min, phase_lock, fit_min, fit_max, expect_slope,\n"
      "      tolerance, picard_iterations (> 0 runs the contraction diagnostic instead)\n"
      "semilinear_series.csv: t,q_inv,norm,weighted\n"
      "semilinear_summary.csv: status,epsilon,final_time,weighted_sup,slope\n"
      "contraction.csv: iteration,distance,ratio");
  entries.push_back({sl, semilinear_command});

  auto* ne = app.add_subcommand("nonexistence", "test-function exponent bookkeeping and datum pairing scaling");
  ne->footer(
      "keys: n_values, m_values, alpha_values (rational lists), pairings (n:k list), tau_min, tau_max, tau_count,\n"
      "      tolerance\n"
      "verdicts.csv: n,m,alpha,threshold,window_lo,window_hi,k,exponent,verdict\n"
      "pairing.csv: n,k,tau,pairing\n"
      "pairing_fit.csv: n,k,expected,fitted");
  entries.push_back({ne, nonexistence_command});

  auto* rc = app.add_subcommand("radial-crosscheck", "Bessel quadrature against the FFT solution on radial data");
  rc->footer(
      "keys: n, points, half_width, r_lo, r_hi, times (list), xs (list), tolerance\n"
      "crosscheck.csv: n,t,x,fft,quadrature,rel_error");
  entries.push_back({rc, radial_crosscheck_command});

  for (auto& e : entries) e.sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  for (auto& e : entries) {
    if (!e.sub->parsed()) continue;
    const std::string name = e.sub->get_name();
    try {
      std::vector<std::string> overrides = common.overrides;
      if (tt_n && e.sub == tt) overrides.push_back("n=" + std::to_string(*tt_n));
      if (tt_grid && e.sub == tt) overrides.push_back("grid=" + *tt_grid);
      if (!common.config && overrides.empty()) throw ConfigError("empty configuration: pass --config or key overrides");
      Context ctx{ExperimentConfig(name, common.config, overrides), common.out, common.jobs, common.seed, out};
      e.fn(ctx);
      write_atomic(std::filesystem::path(common.out) / (name + ".resolved.ini"), ctx.cfg.resolved(name));
      out << (ctx.pass ? "RESULT pass" : "RESULT fail") << '\n';
      return ctx.pass ? 0 : 1;
    } catch (const ConfigError& ex) {
      err << "config error: " << ex.what() << '\n';
      return 2;
    } catch (const std::exception& ex) {
      err << name << " failed: " << ex.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace plate
