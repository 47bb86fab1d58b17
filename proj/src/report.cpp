/**
 * @file report.cpp
 * @brief CSV writer and frame-average aggregation.
 */
#include "mddsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mddsim {

std::string to_csv(const std::vector<SchemeRunResult>& results) {
  std::string out =
      "scheme,velocity_kmh,user,symbol_index,subcarrier_class,metric,value,"
      "trials,seed\n";
  char buf[256];
  for (const auto& run : results) {
    for (const auto& r : run.rows) {
      std::snprintf(buf, sizeof(buf), "%s,%g,%d,%d,%s,%s,%.12e,%ld,%llu\n",
                    run.schedule.name.c_str(), run.velocity_kmh, r.user,
                    r.symbol_index, to_string(r.tone_class), to_string(r.metric),
                    r.value, run.trials,
                    static_cast<unsigned long long>(run.seed));
      out += buf;
    }
  }
  return out;
}

void write_csv(const std::string& path, const std::vector<SchemeRunResult>& results) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << to_csv(results);
  if (!f) throw std::runtime_error("failed writing " + path);
}

double frame_average_rate(const SystemConfig& cfg, const SchemeRunResult& run,
                          Metric metric) {
  if (metric == Metric::Nmse)
    throw std::invalid_argument("frame averages are defined for rate metrics");
  double total = 0.0;
  for (const auto& r : run.rows) {
    if (r.metric != metric) continue;
    const auto& plan = run.schedule.symbols.at(r.symbol_index - 1);
    int tones = 0;
    switch (r.tone_class) {
      case ToneClass::Dl: tones = cfg.subcarriers_dl; break;
      case ToneClass::Ul: tones = cfg.subcarriers_ul; break;
      case ToneClass::All: tones = cfg.subcarriers_total; break;
    }
    total += plan.weight * r.value * tones;
  }
  return total / (static_cast<double>(run.schedule.length) * cfg.subcarriers_total);
}

}  // namespace mddsim
