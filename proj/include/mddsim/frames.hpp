/**
 * @file frames.hpp
 * @brief Frame schedules for the compared duplexing schemes.
 *
 * A schedule lists, per OFDM symbol: link activity (downlink data, uplink
 * pilots, uplink data), the tone span of each activity, the usable fraction
 * of the symbol after half-duplex switching, and the CSI source for any data
 * transmission (which past symbols feed the predictor, and whether the
 * predictor is the pilot-projection Wiener filter or the per-tone
 * decision-directed filter).
 *
 * Conventions:
 *  - Symbols are 1-based within a frame of length T; frames repeat, so the
 *    symbol after T is symbol 1 of the next frame (switching at the frame
 *    edge is charged inside this frame).
 *  - In half-duplex (TDD) schedules every pilot<->downlink boundary costs
 *    half a symbol, charged to the adjacent *data* symbol; an uplink-data ->
 *    downlink boundary is charged to the uplink-data side. Cross-band
 *    schemes (MDD, IBFD) never switch, so all weights are 1.
 */
#pragma once

#include <string>
#include <vector>

#include "mddsim/config.hpp"

namespace mddsim {

enum class Duplex { Tdd, Mdd, Ibfd };

enum class PredictorKind { None, Wiener, DecisionDirected };

struct Predictor {
  PredictorKind kind = PredictorKind::None;
  // Observation symbol indices, most recent first (strictly decreasing).
  std::vector<int> observations;

  bool operator==(const Predictor&) const = default;
};

struct SymbolPlan {
  int index = 0;             // 1-based
  bool dl_data = false;
  bool dl_all_tones = false; // downlink spans all tones (TDD / IBFD / borrowed)
  bool ul_pilot = false;
  bool ul_data = false;
  bool ul_all_tones = false; // uplink activity spans all tones (TDD)
  double weight = 1.0;       // usable fraction for frame-average accounting
  Predictor dl_predictor;    // CSI source for downlink precoding at this symbol
  Predictor ul_predictor;    // CSI source for uplink combining at this symbol

  bool operator==(const SymbolPlan&) const = default;
};

struct FrameSchedule {
  std::string name;   // canonical scheme token, e.g. "MDD-1(7)"
  Duplex duplex = Duplex::Tdd;
  int length = 0;     // T
  int tau_p = 0;      // pilot budget per frame
  int tau_u = 0;      // uplink data symbols (schemes with an uplink phase)
  int kappa_p = 0;    // early-start pilot count (early-downlink schemes)
  int order = 0;      // Wiener predictor depth for type-I schemes
  std::vector<int> pilot_positions;
  std::vector<SymbolPlan> symbols;  // size T; symbols[i-1].index == i

  bool operator==(const FrameSchedule&) const = default;
};

// Builds the schedule for a scheme token. Accepted tokens (case-insensitive):
//   tdd-1, tdd-1-nop, tdd-1-es, tdd-1-tg,
//   mdd-1, mdd-1(z), mdd-1-pa,
//   tdd-2, tdd-2-tg, mdd-2,
//   ibfd-1, ibfd-1(z)
// where z overrides the Wiener predictor depth (default cfg.predictor_order).
// Throws ConfigError for unknown tokens or schedules that do not fit T.
FrameSchedule build_schedule(const std::string& token, const SystemConfig& cfg);

// Structural invariants; returns human-readable violations (empty == valid).
std::vector<std::string> validate_schedule(const FrameSchedule& s);

// Human-readable table for debugging and the CLI --print-schedule mode.
std::string to_table(const FrameSchedule& s);

// All canonical scheme tokens buildable from a config (for CLI help/tests).
std::vector<std::string> known_scheme_tokens();

}  // namespace mddsim
