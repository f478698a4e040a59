#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "risac/gain_max.hpp"
#include "risac/report.hpp"
#include "risac/scenario.hpp"
#include "risac/sre.hpp"
#include "risac/version.hpp"

namespace risac {

enum class Algo { NoRis, Sre, Benchmark, All };
enum class Sweep { None, Gamma0, RisSize };

inline Algo parse_algo(const std::string& s) {
  if (s == "no-ris") return Algo::NoRis;
  if (s == "sre") return Algo::Sre;
  if (s == "benchmark") return Algo::Benchmark;
  if (s == "all") return Algo::All;
  throw ConfigError("unknown algo '" + s +
                    "' (expected sre, benchmark, no-ris or all)");
}

inline Sweep parse_sweep(const std::string& s) {
  if (s == "none") return Sweep::None;
  if (s == "gamma0") return Sweep::Gamma0;
  if (s == "ris-size") return Sweep::RisSize;
  throw ConfigError("unknown sweep '" + s +
                    "' (expected none, gamma0 or ris-size)");
}

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::NoRis:
      return "no-ris";
    case Algo::Sre:
      return "sre";
    case Algo::Benchmark:
      return "benchmark";
    case Algo::All:
      return "all";
  }
  return "?";
}

inline const char* sweep_name(Sweep s) {
  switch (s) {
    case Sweep::None:
      return "none";
    case Sweep::Gamma0:
      return "gamma0";
    case Sweep::RisSize:
      return "ris-size";
  }
  return "?";
}

/// Full experiment description: a scenario plus how to run it.  A single
/// key=value file configures both; command-line flags override.
struct RunConfig {
  Scenario scenario;
  Algo algo = Algo::All;
  Sweep sweep = Sweep::None;
  std::vector<double> sweep_values;  // dB for gamma0, element counts for ris-size
  int trials = 1;
  std::string out_dir = "out";
  std::string config_path;  // echoed into the manifest

  /// Grid actually used: configured values, or the default grid for the
  /// chosen sweep.
  std::vector<double> grid() const {
    if (sweep == Sweep::None) return {0.0};
    if (!sweep_values.empty()) return sweep_values;
    if (sweep == Sweep::Gamma0)
      return {0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 18.0, 21.0};
    return {16.0, 32.0, 64.0, 128.0, 256.0};
  }

  void validate() const {
    scenario.validate();
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (sweep == Sweep::RisSize)
      for (double g : grid()) {
        if (g < 1.0 || g != std::floor(g))
          throw ConfigError("ris-size sweep values must be positive integers");
      }
    if (sweep == Sweep::Gamma0)
      for (double g : grid())
        if (!std::isfinite(g)) throw ConfigError("gamma0 sweep values must be finite");
  }
};

namespace detail {
inline std::vector<double> parse_double_list(const std::string& key,
                                             const std::string& val) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(val);
  while (std::getline(in, cur, ',')) {
    // trim
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ConfigError("key '" + key + "': empty list entry");
    out.push_back(parse_double(key, cur.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}
}  // namespace detail

inline RunConfig parse_run_config_text(const std::string& text,
                                       const std::string& origin) {
  const auto kv = detail::parse_kv_text(text, origin);
  for (const auto& [k, v] : kv) {
    (void)v;
    if (!detail::scenario_keys().count(k) && !detail::run_keys().count(k))
      throw ConfigError(origin + ": unknown key '" + k + "'");
  }
  RunConfig cfg;
  cfg.scenario = detail::scenario_from_kv(kv);
  if (kv.count("algo")) cfg.algo = parse_algo(kv.at("algo"));
  if (kv.count("sweep")) cfg.sweep = parse_sweep(kv.at("sweep"));
  if (kv.count("sweep_values"))
    cfg.sweep_values =
        detail::parse_double_list("sweep_values", kv.at("sweep_values"));
  if (kv.count("trials")) {
    const long long t = detail::parse_int("trials", kv.at("trials"));
    if (t < 1 || t > 1000000) throw ConfigError("trials out of range");
    cfg.trials = static_cast<int>(t);
  }
  if (kv.count("out_dir")) cfg.out_dir = kv.at("out_dir");
  cfg.config_path = origin;
  cfg.validate();
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  return parse_run_config_text(detail::read_text_file(path), path);
}

/// One solver run on one realization.  wall_ms covers the solve call
/// only; channel synthesis is excluded.
struct ResultRow {
  std::string algorithm;
  std::string sweep;  // "none", "gamma0" or "ris-size"
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double snr_s = 0.0;
  double snr_c = 0.0;
  double rate = 0.0;
  double rho_abs = 0.0;
  int iterations = 0;
  bool converged = false;
  double wall_ms = 0.0;
};

namespace detail {
inline std::vector<Algo> expand_algos(Algo a) {
  if (a == Algo::All) return {Algo::NoRis, Algo::Sre, Algo::Benchmark};
  return {a};
}

inline Scenario apply_sweep(const Scenario& base, Sweep sweep, double value) {
  Scenario sc = base;
  if (sweep == Sweep::Gamma0) sc.gamma0 = std::pow(10.0, value / 10.0);
  if (sweep == Sweep::RisSize) sc.ris_elements = static_cast<int>(value);
  return sc;
}
}  // namespace detail

/// Run the configured experiment.  Deterministic given the config: trial
/// t draws its seed as child t of the base seed, and within a trial the
/// substreams are 0 = channels, 1 = sre start, 2 = benchmark start.  Rows
/// come back sorted by (algorithm, sweep_value, trial).
inline std::vector<ResultRow> run_experiment(const RunConfig& cfg) {
  cfg.validate();
  std::vector<ResultRow> rows;
  const std::vector<Algo> algos = detail::expand_algos(cfg.algo);
  const std::vector<double> grid = cfg.grid();
  const SeededRng root(cfg.scenario.seed);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (double sv : grid) {
    const Scenario sc_v = detail::apply_sweep(cfg.scenario, cfg.sweep, sv);
    for (int t = 0; t < cfg.trials; ++t) {
      const SeededRng trial_rng = root.child(static_cast<std::uint64_t>(t));
      Scenario sc = sc_v;
      sc.seed = trial_rng.seed();
      SeededRng rng_ch = trial_rng.child(0);
      const ChannelSet ch = build_channels(sc, rng_ch);

      for (Algo a : algos) {
        ResultRow row;
        row.algorithm = algo_name(a);
        row.sweep = sweep_name(cfg.sweep);
        row.sweep_value = sv;
        row.trial = t;
        row.seed = trial_rng.seed();
        const auto t0 = std::chrono::steady_clock::now();
        try {
          SolveReport rep;
          if (a == Algo::NoRis) {
            rep = solve_no_ris(ch, sc);
          } else if (a == Algo::Sre) {
            SeededRng rng = trial_rng.child(1);
            rep = sre_solve(ch, sc, SreParams{}, rng);
          } else {
            SeededRng rng = trial_rng.child(2);
            rep = gain_max_solve(ch, sc, AoParams{}, rng);
          }
          row.snr_s = rep.metrics.snr_s;
          row.snr_c = rep.metrics.snr_c;
          row.rate = rep.metrics.rate;
          row.rho_abs = rep.metrics.rho_abs;
          row.iterations = rep.iterations;
          row.converged = rep.converged;
        } catch (const Infeasible&) {
          row.snr_s = nan;
          row.snr_c = nan;
          row.rate = nan;
          row.rho_abs = nan;
          row.iterations = 0;
          row.converged = false;
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back(std::move(row));
      }
    }
  }

  std::sort(rows.begin(), rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
              if (a.sweep_value != b.sweep_value)
                return a.sweep_value < b.sweep_value;
              return a.trial < b.trial;
            });
  return rows;
}

/// Aggregates over one (algorithm, sweep_value) group.  Statistics cover
/// converged rows only; with none, they are NaN.
struct SummaryRow {
  std::string algorithm;
  std::string sweep;
  double sweep_value = 0.0;
  int n = 0;
  int n_converged = 0;
  double snr_s_mean = 0.0, snr_s_median = 0.0, snr_s_p10 = 0.0,
         snr_s_p90 = 0.0;
  double snr_c_mean = 0.0;
  double rate_mean = 0.0, rate_median = 0.0;
  double rho_abs_mean = 0.0;
  double wall_ms_mean = 0.0;
};

namespace detail {
/// Percentile with linear interpolation between order statistics.
inline double percentile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}
}  // namespace detail

inline std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw EmptyInput("summarize: no rows");
  std::vector<ResultRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ResultRow& a, const ResultRow& b) {
              if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
              return a.sweep_value < b.sweep_value;
            });
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].algorithm == sorted[i].algorithm &&
           sorted[j].sweep_value == sorted[i].sweep_value)
      ++j;
    SummaryRow s;
    s.algorithm = sorted[i].algorithm;
    s.sweep = sorted[i].sweep;
    s.sweep_value = sorted[i].sweep_value;
    s.n = static_cast<int>(j - i);
    std::vector<double> snr_s, snr_c, rate, rho, wall;
    for (std::size_t k = i; k < j; ++k) {
      if (!sorted[k].converged) continue;
      ++s.n_converged;
      snr_s.push_back(sorted[k].snr_s);
      snr_c.push_back(sorted[k].snr_c);
      rate.push_back(sorted[k].rate);
      rho.push_back(sorted[k].rho_abs);
      wall.push_back(sorted[k].wall_ms);
    }
    s.snr_s_mean = detail::mean(snr_s);
    s.snr_s_median = detail::percentile(snr_s, 0.5);
    s.snr_s_p10 = detail::percentile(snr_s, 0.1);
    s.snr_s_p90 = detail::percentile(snr_s, 0.9);
    s.snr_c_mean = detail::mean(snr_c);
    s.rate_mean = detail::mean(rate);
    s.rate_median = detail::percentile(rate, 0.5);
    s.rho_abs_mean = detail::mean(rho);
    s.wall_ms_mean = detail::mean(wall);
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

namespace detail {
/// Shortest round-trippable decimal for a double.
inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << s;
  if (!out) throw Error("short write to " + p.string());
}
}  // namespace detail

/// Write results.csv, timing.csv, summary.csv and manifest.txt under dir.
/// results.csv and manifest.txt are deterministic functions of the
/// config; wall-clock numbers are quarantined in timing.csv and the
/// wall_ms_mean column of summary.csv.
inline void write_outputs(const std::vector<ResultRow>& rows,
                          const RunConfig& cfg, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  std::string res =
      "algorithm,sweep,sweep_value,trial,seed,snr_s,snr_c,rate_bps_hz,"
      "rho_abs,iterations,converged\n";
  for (const ResultRow& r : rows) {
    res += r.algorithm;
    res += ',';
    res += r.sweep;
    res += ',';
    res += (r.sweep == "none") ? "" : detail::fmt_double(r.sweep_value);
    res += ',';
    res += std::to_string(r.trial);
    res += ',';
    res += std::to_string(r.seed);
    res += ',';
    res += detail::fmt_double(r.snr_s);
    res += ',';
    res += detail::fmt_double(r.snr_c);
    res += ',';
    res += detail::fmt_double(r.rate);
    res += ',';
    res += detail::fmt_double(r.rho_abs);
    res += ',';
    res += std::to_string(r.iterations);
    res += ',';
    res += r.converged ? '1' : '0';
    res += '\n';
  }
  detail::write_text(fs::path(dir) / "results.csv", res);

  std::string tim = "algorithm,sweep,sweep_value,trial,wall_ms\n";
  for (const ResultRow& r : rows) {
    tim += r.algorithm;
    tim += ',';
    tim += r.sweep;
    tim += ',';
    tim += (r.sweep == "none") ? "" : detail::fmt_double(r.sweep_value);
    tim += ',';
    tim += std::to_string(r.trial);
    tim += ',';
    tim += detail::fmt_double(r.wall_ms);
    tim += '\n';
  }
  detail::write_text(fs::path(dir) / "timing.csv", tim);

  std::string sum =
      "algorithm,sweep,sweep_value,n,n_converged,snr_s_mean,snr_s_median,"
      "snr_s_p10,snr_s_p90,snr_c_mean,rate_mean,rate_median,rho_abs_mean,"
      "wall_ms_mean\n";
  for (const SummaryRow& s : summarize(rows)) {
    sum += s.algorithm;
    sum += ',';
    sum += s.sweep;
    sum += ',';
    sum += (s.sweep == "none") ? "" : detail::fmt_double(s.sweep_value);
    sum += ',';
    sum += std::to_string(s.n);
    sum += ',';
    sum += std::to_string(s.n_converged);
    for (double x : {s.snr_s_mean, s.snr_s_median, s.snr_s_p10, s.snr_s_p90,
                     s.snr_c_mean, s.rate_mean, s.rate_median, s.rho_abs_mean,
                     s.wall_ms_mean}) {
      sum += ',';
      sum += detail::fmt_double(x);
    }
    sum += '\n';
  }
  detail::write_text(fs::path(dir) / "summary.csv", sum);

  const Scenario& sc = cfg.scenario;
  const Vec2 ue = sc.ue_pos();
  std::string man;
  auto kv = [&man](const std::string& k, const std::string& v) {
    man += k;
    man += ": ";
    man += v;
    man += '\n';
  };
  kv("tool", std::string("risac ") + kVersion);
  kv("config", cfg.config_path);
  kv("algo", algo_name(cfg.algo));
  kv("sweep", sweep_name(cfg.sweep));
  {
    std::string g;
    for (double x : cfg.grid()) {
      if (!g.empty()) g += ',';
      g += detail::fmt_double(x);
    }
    kv("sweep_grid", cfg.sweep == Sweep::None ? "-" : g);
  }
  kv("trials", std::to_string(cfg.trials));
  kv("seed", std::to_string(sc.seed));
  kv("bs", detail::fmt_double(sc.bs_pos.x) + "," + detail::fmt_double(sc.bs_pos.y));
  kv("ris", detail::fmt_double(sc.ris_pos.x) + "," + detail::fmt_double(sc.ris_pos.y));
  kv("target", detail::fmt_double(sc.target_pos.x) + "," +
                   detail::fmt_double(sc.target_pos.y));
  kv("ue", detail::fmt_double(ue.x) + "," + detail::fmt_double(ue.y));
  kv("n_tx", std::to_string(sc.n_tx));
  kv("n_rx", std::to_string(sc.n_rx));
  kv("ris_elements", std::to_string(sc.ris_elements));
  kv("carrier_hz", detail::fmt_double(sc.carrier_hz));
  kv("tx_power_w", detail::fmt_double(sc.tx_power_w));
  kv("noise_s_w", detail::fmt_double(sc.noise_s_w));
  kv("noise_c_w", detail::fmt_double(sc.noise_c_w));
  kv("gamma0_linear", detail::fmt_double(sc.gamma0));
  kv("pathloss_exp_bu", detail::fmt_double(sc.pathloss_exp_bu));
  kv("pathloss_exp_ru", detail::fmt_double(sc.pathloss_exp_ru));
  kv("rows", std::to_string(rows.size()));
  detail::write_text(fs::path(dir) / "manifest.txt", man);
}

}  // namespace risac
