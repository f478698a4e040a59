#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "risac/errors.hpp"

namespace risac {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Vec2 a, Vec2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

constexpr double kSpeedOfLight = 299792458.0;

/// Physical setup of one deployment: node positions, array sizes, powers.
/// Defaults describe the reference desk-scale deployment used throughout
/// the test suite.
struct Scenario {
  Vec2 bs_pos{0.0, 0.0};
  Vec2 ris_pos{30.0, 30.0};
  Vec2 target_pos{40.0, 0.0};

  /// UE placement: explicit coordinates win; otherwise the UE sits at
  /// ue_distance from the BS, rotated ue_angle_deg from the BS->target
  /// direction (counter-clockwise positive).
  std::optional<Vec2> ue_pos_override;
  double ue_distance = 30.0;
  double ue_angle_deg = -60.0;

  int n_tx = 15;
  int n_rx = 15;
  int ris_elements = 64;

  double carrier_hz = 3.0e9;
  double tx_power_w = 1.0;
  double noise_s_w = 1.0e-9;
  double noise_c_w = 1.0e-9;
  double gamma0 = 10.0;  // linear SNR floor for the comms link

  double pathloss_exp_bu = 3.0;
  double pathloss_exp_ru = 2.2;

  std::uint64_t seed = 1;

  double wavelength() const { return kSpeedOfLight / carrier_hz; }

  Vec2 ue_pos() const {
    if (ue_pos_override) return *ue_pos_override;
    const double ax = target_pos.x - bs_pos.x;
    const double ay = target_pos.y - bs_pos.y;
    const double r = std::hypot(ax, ay);
    if (r == 0.0)
      throw DegenerateGeometry("BS and target coincide; UE bearing undefined");
    const double t = ue_angle_deg * std::numbers::pi / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    const double ux = (c * ax - s * ay) / r;
    const double uy = (s * ax + c * ay) / r;
    return Vec2{bs_pos.x + ue_distance * ux, bs_pos.y + ue_distance * uy};
  }

  void validate() const {
    auto bad = [](const std::string& what) { throw ConfigError(what); };
    if (n_tx < 1) bad("n_tx must be >= 1");
    if (n_rx < 1) bad("n_rx must be >= 1");
    if (ris_elements < 1) bad("ris_elements must be >= 1");
    if (!(carrier_hz > 0.0)) bad("carrier_hz must be > 0");
    if (!(tx_power_w > 0.0)) bad("tx_power_w must be > 0");
    if (!(noise_s_w > 0.0)) bad("noise_s_w must be > 0");
    if (!(noise_c_w > 0.0)) bad("noise_c_w must be > 0");
    if (!(gamma0 > 0.0)) bad("gamma0 must be > 0");
    if (!(pathloss_exp_bu >= 0.0)) bad("pathloss_exp_bu must be >= 0");
    if (!(pathloss_exp_ru >= 0.0)) bad("pathloss_exp_ru must be >= 0");
    if (!ue_pos_override && !(ue_distance > 0.0))
      bad("ue_distance must be > 0");
  }
};

namespace detail {

/// Parsed key=value file: '#' comments, blank lines ignored, duplicate
/// keys rejected.
inline std::map<std::string, std::string> parse_kv_text(
    const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (kv.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

inline double parse_double(const std::string& key, const std::string& val) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    if (!std::isfinite(d)) throw std::invalid_argument("not finite");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + val +
                      "' as a number");
  }
}

inline long long parse_int(const std::string& key, const std::string& val) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + val +
                      "' as an integer");
  }
}

inline std::uint64_t parse_u64(const std::string& key,
                               const std::string& val) {
  try {
    std::size_t pos = 0;
    const unsigned long long n = std::stoull(val, &pos);
    if (pos != val.size()) throw std::invalid_argument("trailing junk");
    return n;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + val +
                      "' as an unsigned integer");
  }
}

/// Keys consumed by Scenario; the run harness adds its own on top.
inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys = {
      "bs_x",         "bs_y",          "ris_x",          "ris_y",
      "target_x",     "target_y",      "ue_x",           "ue_y",
      "ue_distance",  "ue_angle_deg",  "n_tx",           "n_rx",
      "ris_elements", "carrier_hz",    "tx_power_w",     "noise_s_w",
      "noise_c_w",    "gamma0_db",     "pathloss_exp_bu", "pathloss_exp_ru",
      "seed"};
  return keys;
}

inline const std::set<std::string>& run_keys() {
  static const std::set<std::string> keys = {"algo", "sweep", "sweep_values",
                                             "trials", "out_dir"};
  return keys;
}

inline Scenario scenario_from_kv(
    const std::map<std::string, std::string>& kv) {
  Scenario sc;
  auto getd = [&](const char* k, double& dst) {
    auto it = kv.find(k);
    if (it != kv.end()) dst = parse_double(k, it->second);
  };
  getd("bs_x", sc.bs_pos.x);
  getd("bs_y", sc.bs_pos.y);
  getd("ris_x", sc.ris_pos.x);
  getd("ris_y", sc.ris_pos.y);
  getd("target_x", sc.target_pos.x);
  getd("target_y", sc.target_pos.y);
  if (kv.count("ue_x") != kv.count("ue_y"))
    throw ConfigError("ue_x and ue_y must be given together");
  if (kv.count("ue_x")) {
    Vec2 ue;
    ue.x = parse_double("ue_x", kv.at("ue_x"));
    ue.y = parse_double("ue_y", kv.at("ue_y"));
    sc.ue_pos_override = ue;
  }
  getd("ue_distance", sc.ue_distance);
  getd("ue_angle_deg", sc.ue_angle_deg);
  auto geti = [&](const char* k, int& dst) {
    auto it = kv.find(k);
    if (it != kv.end()) {
      const long long n = parse_int(k, it->second);
      if (n < -2147483647LL || n > 2147483647LL)
        throw ConfigError(std::string("key '") + k + "': out of range");
      dst = static_cast<int>(n);
    }
  };
  geti("n_tx", sc.n_tx);
  geti("n_rx", sc.n_rx);
  geti("ris_elements", sc.ris_elements);
  getd("carrier_hz", sc.carrier_hz);
  getd("tx_power_w", sc.tx_power_w);
  getd("noise_s_w", sc.noise_s_w);
  getd("noise_c_w", sc.noise_c_w);
  if (kv.count("gamma0_db"))
    sc.gamma0 = std::pow(10.0, parse_double("gamma0_db", kv.at("gamma0_db")) / 10.0);
  getd("pathloss_exp_bu", sc.pathloss_exp_bu);
  getd("pathloss_exp_ru", sc.pathloss_exp_ru);
  if (kv.count("seed")) sc.seed = parse_u64("seed", kv.at("seed"));
  sc.validate();
  return sc;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parse a scenario from key=value text.  Run-harness keys (algo, sweep,
/// trials, ...) are allowed and skipped so one file can configure a full
/// experiment; anything else unknown is an error.
inline Scenario parse_scenario_text(const std::string& text,
                                    const std::string& origin = "<string>") {
  const auto kv = detail::parse_kv_text(text, origin);
  for (const auto& [k, v] : kv) {
    (void)v;
    if (!detail::scenario_keys().count(k) && !detail::run_keys().count(k))
      throw ConfigError(origin + ": unknown key '" + k + "'");
  }
  return detail::scenario_from_kv(kv);
}

inline Scenario load_scenario(const std::string& path) {
  return parse_scenario_text(detail::read_text_file(path), path);
}

}  // namespace risac
