/**
 * @file phylink.cpp
 * @brief Precoders, self-interference, and rate bounds.
 */
#include "mddsim/phylink.hpp"

#include <cmath>
#include <stdexcept>

namespace mddsim {

namespace {

constexpr double kMinReciprocalCondition = 1e-10;  // Gram matrices worse than
                                                   // this are treated as rank
                                                   // deficient

double log2_sinr(double num, double den) {
  if (den <= 0.0) throw std::invalid_argument("non-positive interference-plus-noise");
  return std::log2(1.0 + num / den);
}

}  // namespace

double residual_self_interference(double total_power_watts, double cancellation_linear) {
  if (total_power_watts < 0.0 || cancellation_linear < 0.0)
    throw std::invalid_argument("powers must be non-negative");
  return total_power_watts * cancellation_linear;
}

bool try_zf_precoder(const arma::cx_mat& est, arma::cx_mat& precoder) {
  const arma::uword n = est.n_rows;
  const arma::uword users = est.n_cols;
  if (users == 0 || n < users)
    throw std::invalid_argument("need at least as many antennas as users");
  const arma::cx_mat gram = est.t() * est;
  if (!gram.is_finite() || arma::rcond(gram) < kMinReciprocalCondition)
    return false;
  arma::cx_mat inv_gram;
  if (!arma::inv_sympd(inv_gram, gram)) return false;
  arma::cx_mat f = est * inv_gram;
  const double scale = 1.0 / std::sqrt(static_cast<double>(users));
  for (arma::uword d = 0; d < users; ++d) {
    const double len = arma::norm(f.col(d));
    if (len <= 0.0) return false;
    f.col(d) *= scale / len;
  }
  precoder = std::move(f);
  return true;
}

arma::cx_mat zf_precoder(const arma::cx_mat& est) {
  arma::cx_mat f;
  if (!try_zf_precoder(est, f))
    throw std::invalid_argument("channel estimate is rank deficient");
  return f;
}

DlMoments dl_zf_moments(int n_antennas, int users, double predicted_var,
                        double error_var) {
  if (n_antennas < users || users < 1)
    throw std::invalid_argument("need at least as many antennas as users");
  if (predicted_var < 0.0 || error_var < 0.0)
    throw std::invalid_argument("variances must be non-negative");
  DlMoments m;
  // Own-stream gain: a scaled chi distribution with 2(n-users+1) degrees of
  // freedom; its mean-square dominates and the spread contributes var/4.
  m.mean = std::sqrt(static_cast<double>(n_antennas - users + 1) / users * predicted_var);
  m.variance = (0.25 * predicted_var + error_var) / users;
  m.leakage = (users - 1) * error_var / static_cast<double>(users);
  return m;
}

double dl_rate_from_moments(double tx_power, const DlMoments& m, double self_interf,
                            double noise) {
  if (tx_power <= 0.0) throw std::invalid_argument("tx power must be positive");
  const double num = tx_power * m.mean * m.mean;
  const double den = tx_power * (m.variance + m.leakage) + self_interf + noise;
  return log2_sinr(num, den);
}

double dl_rate_closed(double tx_power, int n_antennas, int users, double predicted_var,
                      double tone_var, double self_interf, double noise) {
  if (predicted_var > tone_var + 1e-15)
    throw std::invalid_argument("predicted variance exceeds the channel variance");
  const double error_var = std::max(0.0, tone_var - predicted_var);
  return dl_rate_from_moments(tx_power,
                              dl_zf_moments(n_antennas, users, predicted_var, error_var),
                              self_interf, noise);
}

double ul_rate_closed(double tx_power, int n_antennas, double predicted_var,
                      double other_users_var, double self_interf, double noise) {
  if (tx_power <= 0.0) throw std::invalid_argument("tx power must be positive");
  if (predicted_var < 0.0 || other_users_var < 0.0)
    throw std::invalid_argument("variances must be non-negative");
  const double num = tx_power * n_antennas * predicted_var;
  const double den = tx_power * other_users_var + self_interf + noise;
  return log2_sinr(num, den);
}

void dl_zf_terms(const arma::cx_mat& truth, const arma::cx_mat& precoder,
                 arma::cx_vec& gains, arma::vec& cross_power) {
  if (truth.n_rows != precoder.n_rows || truth.n_cols != precoder.n_cols)
    throw std::invalid_argument("truth and precoder shapes differ");
  const arma::uword users = truth.n_cols;
  const arma::cx_mat eff = truth.t() * precoder;  // eff(d, k) = h_d^H f_k
  gains.set_size(users);
  cross_power.zeros(users);
  for (arma::uword d = 0; d < users; ++d) {
    gains(d) = eff(d, d);
    for (arma::uword k = 0; k < users; ++k)
      if (k != d) cross_power(d) += std::norm(eff(d, k));
  }
}

void ul_mrc_terms(const arma::cx_mat& truth, const arma::cx_mat& predicted,
                  arma::vec& norm_sq, arma::vec& cross_power) {
  if (truth.n_rows != predicted.n_rows || truth.n_cols != predicted.n_cols)
    throw std::invalid_argument("truth and prediction shapes differ");
  const arma::uword users = truth.n_cols;
  const arma::cx_mat eff = predicted.t() * truth;  // eff(d, k) = pred_d^H h_k
  norm_sq.set_size(users);
  cross_power.zeros(users);
  for (arma::uword d = 0; d < users; ++d) {
    norm_sq(d) = std::real(arma::cdot(predicted.col(d), predicted.col(d)));
    for (arma::uword k = 0; k < users; ++k)
      if (k != d) cross_power(d) += std::norm(eff(d, k));
  }
}

void DlRateAccumulator::add(std::complex<double> gain, double cross_power) {
  gain_sum_ += gain;
  gain_sq_sum_ += std::norm(gain);
  cross_sum_ += cross_power;
  ++count_;
}

void DlRateAccumulator::merge(const DlRateAccumulator& other) {
  gain_sum_ += other.gain_sum_;
  gain_sq_sum_ += other.gain_sq_sum_;
  cross_sum_ += other.cross_sum_;
  count_ += other.count_;
}

double DlRateAccumulator::rate(double tx_power, double self_interf, double noise) const {
  if (count_ == 0) return 0.0;  // every instance was discarded
  const std::complex<double> mean = gain_sum_ / static_cast<double>(count_);
  const double mean_sq = std::norm(mean);
  const double var = std::max(0.0, gain_sq_sum_ / count_ - mean_sq);
  const double cross = cross_sum_ / count_;
  const double num = tx_power * mean_sq;
  const double den = tx_power * (var + cross) + self_interf + noise;
  return std::log2(1.0 + num / den);
}

void UlRateAccumulator::add(double norm_sq, double cross_power) {
  norm_sum_ += norm_sq;
  norm_sq_sum_ += norm_sq * norm_sq;
  cross_sum_ += cross_power;
  ++count_;
}

void UlRateAccumulator::merge(const UlRateAccumulator& other) {
  norm_sum_ += other.norm_sum_;
  norm_sq_sum_ += other.norm_sq_sum_;
  cross_sum_ += other.cross_sum_;
  count_ += other.count_;
}

double UlRateAccumulator::rate(double tx_power, double self_interf, double noise) const {
  if (count_ == 0) return 0.0;
  const double num = tx_power * norm_sq_sum_ / count_;
  const double den = tx_power * cross_sum_ / count_ +
                     (norm_sum_ / count_) * (self_interf + noise);
  return std::log2(1.0 + num / den);
}

}  // namespace mddsim
