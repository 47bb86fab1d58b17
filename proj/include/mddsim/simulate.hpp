/**
 * @file simulate.hpp
 * @brief Monte Carlo link-level engine: runs a frame schedule over random
 *        channel realizations and collects per-symbol rate and NMSE metrics.
 *
 * User geometry (pathloss) is drawn once per run from the master seed, so
 * every metric conditions on the same large-scale gains. Per trial the
 * engine draws a stationary initial channel and an AR(1) tap trajectory
 * across the frame; generates every scheduled uplink observation (pilots
 * and, for decision-directed schemes, data symbols with genie-known
 * payloads); forms the scheduled channel predictions; and evaluates, on a
 * deterministic evaluation-tone subset,
 *
 *  - rate_mc_lb: the channel-hardening lower bound assembled from Monte
 *    Carlo moments of the effective channel (zero-forcing downlink,
 *    matched-filter uplink),
 *  - rate_closed: the closed-form bound evaluated from the predictor's own
 *    error statistics for the drawn pathlosses, averaged over trials,
 *  - nmse: prediction error power over channel power.
 *
 * Results are deterministic for a given (config, schedule, velocity,
 * trials, seed) regardless of the worker-thread count: every trial uses
 * substreams derived only from the master seed and the trial index, and
 * trial blocks are merged in index order.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mddsim/config.hpp"
#include "mddsim/frames.hpp"

namespace mddsim {

enum class ToneClass { Dl, Ul, All };
enum class Metric { RateMcLb, RateClosed, Nmse };

const char* to_string(ToneClass c);
const char* to_string(Metric m);

struct MetricRow {
  int user = 0;          // 0-based
  int symbol_index = 0;  // 1-based within the frame
  ToneClass tone_class = ToneClass::All;
  bool downlink = true;  // link direction (not part of the CSV schema)
  Metric metric = Metric::RateMcLb;
  double value = 0.0;
};

struct SchemeRunResult {
  FrameSchedule schedule;
  double velocity_kmh = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  long zf_discards = 0;  // degenerate precoder instances skipped
  std::vector<MetricRow> rows;

  // Sum over users of a per-symbol metric (zero when no matching row).
  double sum_over_users(Metric metric, int symbol_index, ToneClass cls,
                        bool downlink) const;
};

// threads = 0 picks the hardware concurrency; any value yields identical
// results.
SchemeRunResult run_scheme(const SystemConfig& cfg, const FrameSchedule& schedule,
                           double velocity_kmh, long trials, std::uint64_t seed,
                           int eval_tones_per_class, int threads = 0);

// Every scheme token crossed with every velocity in the spec.
std::vector<SchemeRunResult> run_sweep(const SystemConfig& cfg, const RunSpec& spec);

}  // namespace mddsim
