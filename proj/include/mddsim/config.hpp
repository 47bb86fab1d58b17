/**
 * @file config.hpp
 * @brief System-level configuration and run specification.
 *
 * SystemConfig carries the physical and numerological parameters of the
 * simulated cell (antennas, users, subcarrier split, power budgets, fading
 * and self-interference figures). RunSpec carries one harness invocation
 * (schemes, velocity grid, trials, seed, output). Both load from a JSON file
 * where every key is optional: an empty object yields the documented
 * defaults, and unknown keys are rejected so typos cannot silently fall back
 * to defaults.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mddsim {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct SystemConfig {
  int bs_antennas = 32;          // N
  int users = 8;                 // D, single-antenna terminals
  int subcarriers_total = 96;    // M_sum
  int subcarriers_dl = 64;       // |M|, downlink set in the subcarrier split
  int subcarriers_ul = 32;       // |Mbar|, uplink set in the subcarrier split
  int delay_taps = 4;            // L, time-domain CIR length
  double carrier_hz = 5.0e9;
  double subcarrier_spacing_hz = 15.0e3;
  double symbol_duration_s = 66.67e-6;
  int frame_symbols = 28;        // T
  double bs_power_dbm = 30.0;    // total DL budget, split across active tones
  double mt_power_dbm = 20.0;    // total UL budget per terminal
  double noise_dbm = -94.0;      // per subcarrier
  double pathloss_exponent = 3.8;
  double distance_min_m = 50.0;
  double distance_max_m = 100.0;
  double sic_bs_db = 130.0;      // BS-side self-interference cancellation
  double sic_mt_db = 120.0;      // terminal-side cancellation
  double ibfd_sic_bs_db = 130.0; // cancellation granted to the in-band FD scheme
  double ibfd_sic_mt_db = 120.0;
  int pilot_symbols = 7;         // tau_p
  int ul_data_symbols = 7;       // tau_u (frames with an uplink data phase)
  int early_pilots = 1;          // kappa_p (frames that start downlink early)
  int predictor_order = 7;       // default Wiener predictor depth

  double bs_power_watts() const { return dbm_to_watts(bs_power_dbm); }
  double mt_power_watts() const { return dbm_to_watts(mt_power_dbm); }
  double noise_watts() const { return dbm_to_watts(noise_dbm); }
  double sic_bs() const { return db_to_linear(-sic_bs_db); }
  double sic_mt() const { return db_to_linear(-sic_mt_db); }
  double ibfd_sic_bs() const { return db_to_linear(-ibfd_sic_bs_db); }
  double ibfd_sic_mt() const { return db_to_linear(-ibfd_sic_mt_db); }
};

struct RunSpec {
  std::vector<std::string> schemes;    // scheme tokens, e.g. "mdd-1(7)"
  std::vector<double> velocities_kmh;  // evaluation grid, default 20:20:300
  int trials = 200;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool emit_plots = false;
  int eval_tones_per_class = 8;        // Monte Carlo rate evaluation tones
  int threads = 0;                     // trial workers, 0 = hardware concurrency
};

// The default velocity grid used when a run spec lists none.
std::vector<double> default_velocity_grid();

// Thrown on malformed configuration files or invalid parameter sets.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a JSON configuration. Missing file content ("{}" or empty file)
// yields defaults; unknown keys and invalid values raise ConfigError with the
// offending field name.
SystemConfig load_system_config(const std::string& path);
SystemConfig system_config_from_json(const std::string& text);

// Validates cross-field invariants (subcarrier split, positive counts, ...).
// Returns the list of violations; empty means valid.
std::vector<std::string> validate(const SystemConfig& cfg);

// Parses "20:20:300" (start:step:stop) or "100,200" style velocity lists.
std::vector<double> parse_velocities(const std::string& text);

}  // namespace mddsim
