/**
 * @file report.hpp
 * @brief CSV serialization of run results and frame-average aggregation.
 *
 * The CSV layout is stable and byte-reproducible for a fixed (config,
 * schemes, velocities, trials, seed):
 *
 *   scheme,velocity_kmh,user,symbol_index,subcarrier_class,metric,value,trials,seed
 *
 * with subcarrier_class in {DL, UL, all}, metric in {rate_mc_lb,
 * rate_closed, nmse}, and value formatted as %.12e. Frame averages are
 * derived quantities and are computed from the rows rather than emitted.
 */
#pragma once

#include <string>
#include <vector>

#include "mddsim/config.hpp"
#include "mddsim/simulate.hpp"

namespace mddsim {

std::string to_csv(const std::vector<SchemeRunResult>& results);

void write_csv(const std::string& path, const std::vector<SchemeRunResult>& results);

// Frame-average sum rate in bit/s/Hz per tone-symbol resource:
//   sum over rate rows of weight(symbol) * value * |class tones| / (T * M).
// `metric` selects rate_mc_lb or rate_closed rows.
double frame_average_rate(const SystemConfig& cfg, const SchemeRunResult& run,
                          Metric metric);

}  // namespace mddsim
