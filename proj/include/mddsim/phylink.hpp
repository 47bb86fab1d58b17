/**
 * @file phylink.hpp
 * @brief Link-level rate evaluation: zero-forcing precoding, matched-filter
 *        combining, residual self-interference, and the closed-form and
 *        Monte-Carlo ergodic-rate bounds built on channel hardening.
 *
 * Rates are per tone in bit/s/Hz. The Monte-Carlo path accumulates
 * effective-channel moments across independent channel realizations and
 * applies the hardening lower bound once at the end; the closed-form path
 * evaluates the same bound from the predictor's error statistics directly.
 */
#pragma once

#include <armadillo>
#include <complex>

namespace mddsim {

// Residual self-interference power after cancellation. The total transmit
// power of the interfering link is spread over its active tones, so the
// per-tone residual equals cancellation * total power regardless of how
// many tones the interferer occupies.
double residual_self_interference(double total_power_watts, double cancellation_linear);

// Zero-forcing precoder from channel estimates (antennas x users, one column
// per user). Columns are scaled to norm 1/sqrt(users) so the precoder spends
// unit total power. try_zf_precoder reports failure (condition number above
// 1e10 or a non-invertible Gram matrix) instead of throwing, so Monte-Carlo
// callers can discard and count degenerate instances; zf_precoder throws.
bool try_zf_precoder(const arma::cx_mat& est, arma::cx_mat& precoder);
arma::cx_mat zf_precoder(const arma::cx_mat& est);

// ---- Closed-form bounds --------------------------------------------------

// Effective-channel moments of the zero-forcing downlink under white
// estimation error: mean gain, gain variance, and inter-user leakage, for a
// per-user precoder power of 1/users.
struct DlMoments {
  double mean = 0.0;      // E[effective gain]
  double variance = 0.0;  // var[effective gain]
  double leakage = 0.0;   // total inter-user interference factor
};

DlMoments dl_zf_moments(int n_antennas, int users, double predicted_var,
                        double error_var);

// Hardening bound from explicit moments.
double dl_rate_from_moments(double tx_power, const DlMoments& m, double self_interf,
                            double noise);

// Downlink closed form; equals dl_rate_from_moments at the matching moments.
double dl_rate_closed(double tx_power, int n_antennas, int users, double predicted_var,
                      double tone_var, double self_interf, double noise);

// Uplink matched-filter closed form: combining gain n * predicted variance
// against inter-user interference, residual self-interference, and noise.
double ul_rate_closed(double tx_power, int n_antennas, double predicted_var,
                      double other_users_var, double self_interf, double noise);

// ---- Monte-Carlo accumulators ---------------------------------------------

// Per-realization effective-channel terms for the downlink: for each user,
// the own-stream gain h_d^H f_d and the summed power of the cross streams.
void dl_zf_terms(const arma::cx_mat& truth, const arma::cx_mat& precoder,
                 arma::cx_vec& gains, arma::vec& cross_power);

// Per-realization terms for the uplink matched filter built on predictions:
// ||pred||^2 per user and sum_{k != d} |pred_d^H true_k|^2.
void ul_mrc_terms(const arma::cx_mat& truth, const arma::cx_mat& predicted,
                  arma::vec& norm_sq, arma::vec& cross_power);

// Hardening lower bound from accumulated downlink moments.
class DlRateAccumulator {
 public:
  void add(std::complex<double> gain, double cross_power);
  void merge(const DlRateAccumulator& other);
  long trials() const { return count_; }
  double rate(double tx_power, double self_interf, double noise) const;

 private:
  std::complex<double> gain_sum_{0.0, 0.0};
  double gain_sq_sum_ = 0.0;
  double cross_sum_ = 0.0;
  long count_ = 0;
};

// Use-and-forget bound from accumulated uplink moments.
class UlRateAccumulator {
 public:
  void add(double norm_sq, double cross_power);
  void merge(const UlRateAccumulator& other);
  long trials() const { return count_; }
  double rate(double tx_power, double self_interf, double noise) const;

 private:
  double norm_sum_ = 0.0;
  double norm_sq_sum_ = 0.0;  // accumulates ||pred||^4
  double cross_sum_ = 0.0;
  long count_ = 0;
};

}  // namespace mddsim
