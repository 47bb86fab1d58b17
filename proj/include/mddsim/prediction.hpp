/**
 * @file prediction.hpp
 * @brief Channel prediction: pilot-projection Wiener filtering and per-tone
 *        decision-directed filtering over an AR(1) fading process.
 *
 * Two predictor families are supported:
 *
 *  - Wiener (pilot-based): operates on per-user tap-domain pilot
 *    projections. Because the tap prior and the projected noise are both
 *    white, the MMSE filter reduces to one real coefficient per observation
 *    age, shared by all taps, antennas, and users with the same
 *    gain/noise/pathloss profile.
 *
 *  - Decision-directed: operates per tone on raw composite observations
 *    (all users superimposed), using known pilot values and already-decided
 *    data symbols. Produces per-user predictions and the predicted-part
 *    covariance across users.
 *
 * Downlink tones carry no uplink observations in cross-band schemes; they
 *    are recovered by inverting the tap expansion on the uplink tone set.
 */
#pragma once

#include <armadillo>
#include <vector>

#include "mddsim/channel.hpp"

namespace mddsim {

// ---- Pilot-projection Wiener predictor ---------------------------------

struct WienerDesign {
  std::vector<int> ages;          // i - t_q per observation, most recent first
  double obs_gain = 0.0;          // scale a in y = a g + noise
  std::vector<double> obs_noise;  // per-observation noise variance w_q
  double tap_variance = 0.0;      // prior tap variance v
  double alpha = 0.0;             // AR(1) coefficient
  int taps = 0;                   // L
};

struct WienerFilter {
  arma::vec coeff;                      // one real weight per observation
  double predicted_tap_variance = 0.0;  // variance of the predicted part
  double tap_variance = 0.0;            // prior v (error = v - predicted)
  int taps = 0;

  // obs: taps x observations, columns ordered like the design ages.
  arma::cx_vec predict(const arma::cx_mat& obs) const;
  // Variance of a predicted tone coefficient (flat across tones).
  double predicted_tone_variance(int m_sum) const;
};

WienerFilter design_wiener(const WienerDesign& d);

// ---- Per-tone decision-directed predictor -------------------------------

struct DdDesign {
  std::vector<int> ages;          // i - t_q per observation, most recent first
  arma::cx_mat symbols;           // users x observations, unit-power tx values
  arma::vec tone_variances;       // per-user channel variance on this tone
  std::vector<double> obs_noise;  // per-observation noise + interference
  double tx_power = 0.0;          // per-tone uplink transmit power
  double alpha = 0.0;             // AR(1) coefficient
};

struct DdFilter {
  arma::cx_mat weights;  // users x observations
  arma::cx_mat theta;    // users x users, predicted-part covariance

  // obs: observations x antennas -> predictions users x antennas.
  arma::cx_mat predict(const arma::cx_mat& obs) const;
  // Predicted-part variance for one user (real diagonal of theta).
  double predicted_variance(int user) const;
};

DdFilter design_dd(const DdDesign& d);

// ---- Downlink recovery from uplink-tone predictions ---------------------

// Left-inverse of the tap expansion restricted to an evenly spaced tone set,
// plus the energy couplings needed for predicted-variance transfer.
struct ToneRecovery {
  arma::cx_mat inverse;  // taps x |set|; inverse * expansion(set) == I
  arma::mat energy;      // m_sum x |set|; energy(m, q) = |psi_m J e_q|^2
  static ToneRecovery make(const OfdmOperator& op, const arma::uvec& tones);
};

// Tap-domain coefficients recovered from per-tone values on the tone set.
arma::cx_vec recover_taps(const ToneRecovery& rec, const arma::cx_vec& tone_values);

// Predicted-part variance on an arbitrary tone, given the per-tone predicted
// variances on the observed set. Exact under the white-tap prior:
//   var(m) = R_h - sum_q energy(m, q) * (R_h - theta_q).
double recovered_tone_variance(const ToneRecovery& rec, int tone,
                               double tone_variance, const arma::vec& theta_diag);

}  // namespace mddsim
