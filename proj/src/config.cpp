#include "mddsim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mddsim {
namespace {

using nlohmann::json;

// Keys accepted in a system configuration file. Anything else is an error.
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "bs_antennas",      "users",
      "subcarriers_total", "subcarriers_dl",
      "subcarriers_ul",   "delay_taps",
      "carrier_hz",       "subcarrier_spacing_hz",
      "symbol_duration_s", "frame_symbols",
      "bs_power_dbm",     "mt_power_dbm",
      "noise_dbm",        "pathloss_exponent",
      "distance_min_m",   "distance_max_m",
      "sic_bs_db",        "sic_mt_db",
      "ibfd_sic_bs_db",   "ibfd_sic_mt_db",
      "pilot_symbols",    "ul_data_symbols",
      "early_pilots",     "predictor_order",
  };
  return keys;
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field has wrong type: ") + key);
  }
}

}  // namespace

SystemConfig system_config_from_json(const std::string& text) {
  json j;
  std::string body = text;
  // An empty file is treated as an empty object: all defaults.
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) body = "{}";
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known_keys().count(item.key()))
      throw ConfigError("unknown config field: " + item.key());
  }

  SystemConfig cfg;
  read_field(j, "bs_antennas", cfg.bs_antennas);
  read_field(j, "users", cfg.users);
  read_field(j, "subcarriers_total", cfg.subcarriers_total);
  read_field(j, "subcarriers_dl", cfg.subcarriers_dl);
  read_field(j, "subcarriers_ul", cfg.subcarriers_ul);
  read_field(j, "delay_taps", cfg.delay_taps);
  read_field(j, "carrier_hz", cfg.carrier_hz);
  read_field(j, "subcarrier_spacing_hz", cfg.subcarrier_spacing_hz);
  read_field(j, "symbol_duration_s", cfg.symbol_duration_s);
  read_field(j, "frame_symbols", cfg.frame_symbols);
  read_field(j, "bs_power_dbm", cfg.bs_power_dbm);
  read_field(j, "mt_power_dbm", cfg.mt_power_dbm);
  read_field(j, "noise_dbm", cfg.noise_dbm);
  read_field(j, "pathloss_exponent", cfg.pathloss_exponent);
  read_field(j, "distance_min_m", cfg.distance_min_m);
  read_field(j, "distance_max_m", cfg.distance_max_m);
  read_field(j, "sic_bs_db", cfg.sic_bs_db);
  read_field(j, "sic_mt_db", cfg.sic_mt_db);
  read_field(j, "ibfd_sic_bs_db", cfg.ibfd_sic_bs_db);
  read_field(j, "ibfd_sic_mt_db", cfg.ibfd_sic_mt_db);
  read_field(j, "pilot_symbols", cfg.pilot_symbols);
  read_field(j, "ul_data_symbols", cfg.ul_data_symbols);
  read_field(j, "early_pilots", cfg.early_pilots);
  read_field(j, "predictor_order", cfg.predictor_order);

  auto violations = validate(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  return cfg;
}

SystemConfig load_system_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return system_config_from_json(buf.str());
}

std::vector<std::string> validate(const SystemConfig& cfg) {
  std::vector<std::string> out;
  auto require = [&out](bool ok, const std::string& msg) {
    if (!ok) out.push_back(msg);
  };
  require(cfg.bs_antennas > 0, "bs_antennas must be positive");
  require(cfg.users > 0, "users must be positive");
  require(cfg.bs_antennas >= cfg.users, "bs_antennas must be >= users");
  require(cfg.subcarriers_total > 0, "subcarriers_total must be positive");
  require(cfg.subcarriers_dl > 0, "subcarriers_dl must be positive");
  require(cfg.subcarriers_ul > 0, "subcarriers_ul must be positive");
  require(cfg.subcarriers_dl + cfg.subcarriers_ul == cfg.subcarriers_total,
          "subcarriers_dl + subcarriers_ul must equal subcarriers_total");
  require(cfg.subcarriers_total % cfg.subcarriers_ul == 0,
          "subcarriers_ul must divide subcarriers_total (even spacing)");
  require(cfg.delay_taps > 0, "delay_taps must be positive");
  require(cfg.subcarriers_ul >= cfg.users * cfg.delay_taps,
          "subcarriers_ul must be >= users * delay_taps (pilot orthogonality)");
  require(cfg.carrier_hz > 0, "carrier_hz must be positive");
  require(cfg.symbol_duration_s > 0, "symbol_duration_s must be positive");
  require(cfg.frame_symbols >= 2, "frame_symbols must be at least 2");
  require(cfg.pathloss_exponent > 0, "pathloss_exponent must be positive");
  require(cfg.distance_min_m > 0, "distance_min_m must be positive");
  require(cfg.distance_max_m >= cfg.distance_min_m,
          "distance_max_m must be >= distance_min_m");
  require(cfg.pilot_symbols >= 1, "pilot_symbols must be at least 1");
  require(cfg.pilot_symbols < cfg.frame_symbols,
          "pilot_symbols must be smaller than frame_symbols");
  require(cfg.ul_data_symbols >= 1, "ul_data_symbols must be at least 1");
  require(cfg.early_pilots >= 1 && cfg.early_pilots <= cfg.pilot_symbols,
          "early_pilots must lie in [1, pilot_symbols]");
  require(cfg.predictor_order >= 1, "predictor_order must be at least 1");
  require(cfg.predictor_order <= cfg.pilot_symbols,
          "predictor_order must not exceed pilot_symbols");
  return out;
}

std::vector<double> default_velocity_grid() { return parse_velocities("20:20:300"); }

std::vector<double> parse_velocities(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double start = 0, step = 0, stop = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
        step <= 0 || stop < start)
      throw ConfigError("bad velocity range (expected start:step:stop): " + text);
    for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad velocity value: " + item);
    }
  }
  if (out.empty()) throw ConfigError("empty velocity list");
  return out;
}

}  // namespace mddsim
