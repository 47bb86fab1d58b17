/**
 * @file prediction.cpp
 * @brief Wiener and decision-directed predictor design.
 */
#include "mddsim/prediction.hpp"

#include <cmath>
#include <stdexcept>

namespace mddsim {

namespace {

void check_ages(const std::vector<int>& ages, size_t noise_count) {
  if (ages.empty()) throw std::invalid_argument("predictor needs observations");
  if (noise_count != ages.size())
    throw std::invalid_argument("one noise variance per observation required");
  for (size_t q = 0; q < ages.size(); ++q) {
    if (ages[q] < 0) throw std::invalid_argument("observation ages must be >= 0");
    if (q > 0 && ages[q] <= ages[q - 1])
      throw std::invalid_argument("observation ages must be strictly increasing");
  }
}

}  // namespace

WienerFilter design_wiener(const WienerDesign& d) {
  check_ages(d.ages, d.obs_noise.size());
  if (d.taps < 1) throw std::invalid_argument("taps must be positive");
  if (d.tap_variance <= 0.0) throw std::invalid_argument("tap variance must be positive");
  if (d.obs_gain <= 0.0) throw std::invalid_argument("observation gain must be positive");
  if (d.alpha < 0.0 || d.alpha > 1.0)
    throw std::invalid_argument("alpha must lie in [0, 1]");

  const arma::uword tau = d.ages.size();
  const double a = d.obs_gain;
  const double v = d.tap_variance;

  // Per-tap scalar system: S x = delta, with delta_q = alpha^{age_q}.
  arma::vec delta(tau);
  for (arma::uword q = 0; q < tau; ++q) delta(q) = std::pow(d.alpha, d.ages[q]);
  arma::mat gram(tau, tau);
  for (arma::uword p = 0; p < tau; ++p)
    for (arma::uword q = 0; q < tau; ++q) {
      gram(p, q) = a * a * v * std::pow(d.alpha, std::abs(d.ages[p] - d.ages[q]));
      if (p == q) gram(p, q) += d.obs_noise[p];
    }

  arma::vec x;
  if (!arma::solve(x, gram, delta, arma::solve_opts::no_approx))
    x = arma::pinv(gram) * delta;  // noiseless static channel: rank-1 system

  WienerFilter f;
  f.coeff = a * v * x;
  f.predicted_tap_variance = a * a * v * v * arma::dot(delta, x);
  f.tap_variance = v;
  f.taps = d.taps;
  return f;
}

arma::cx_vec WienerFilter::predict(const arma::cx_mat& obs) const {
  if ((int)obs.n_rows != taps || obs.n_cols != coeff.n_elem)
    throw std::invalid_argument("observation block does not match filter shape");
  return obs * arma::cx_vec(coeff, arma::vec(coeff.n_elem, arma::fill::zeros));
}

double WienerFilter::predicted_tone_variance(int m_sum) const {
  if (m_sum < taps) throw std::invalid_argument("tone count below tap count");
  return predicted_tap_variance * taps / static_cast<double>(m_sum);
}

DdFilter design_dd(const DdDesign& d) {
  check_ages(d.ages, d.obs_noise.size());
  const arma::uword users = d.symbols.n_rows;
  const arma::uword tau = d.symbols.n_cols;
  if (users == 0 || tau != d.ages.size())
    throw std::invalid_argument("symbol matrix must be users x observations");
  if (d.tone_variances.n_elem != users)
    throw std::invalid_argument("one tone variance per user required");
  if (d.tx_power <= 0.0) throw std::invalid_argument("tx power must be positive");

  const double sp = std::sqrt(d.tx_power);

  // Cross-covariance between target coefficients and observations.
  arma::cx_mat cross(users, tau);
  for (arma::uword u = 0; u < users; ++u)
    for (arma::uword q = 0; q < tau; ++q)
      cross(u, q) = sp * std::pow(d.alpha, d.ages[q]) * d.tone_variances(u) *
                    std::conj(d.symbols(u, q));

  // Observation covariance.
  arma::cx_mat gram(tau, tau);
  for (arma::uword p = 0; p < tau; ++p)
    for (arma::uword q = 0; q < tau; ++q) {
      std::complex<double> acc = 0.0;
      for (arma::uword u = 0; u < users; ++u)
        acc += d.tone_variances(u) * d.symbols(u, p) * std::conj(d.symbols(u, q));
      gram(p, q) = d.tx_power * std::pow(d.alpha, std::abs(d.ages[p] - d.ages[q])) * acc;
      if (p == q) gram(p, q) += d.obs_noise[p];
    }

  arma::cx_mat solved;
  if (!arma::solve(solved, gram, cross.t(), arma::solve_opts::no_approx))
    solved = arma::pinv(gram) * cross.t();

  DdFilter f;
  f.weights = solved.t();
  f.theta = f.weights * cross.t();
  f.theta = 0.5 * (f.theta + f.theta.t());  // enforce Hermitian symmetry
  return f;
}

arma::cx_mat DdFilter::predict(const arma::cx_mat& obs) const {
  if (obs.n_rows != weights.n_cols)
    throw std::invalid_argument("observation block does not match filter shape");
  return weights * obs;
}

double DdFilter::predicted_variance(int user) const {
  if (user < 0 || (arma::uword)user >= theta.n_rows)
    throw std::invalid_argument("user index out of range");
  return theta(user, user).real();
}

ToneRecovery ToneRecovery::make(const OfdmOperator& op, const arma::uvec& tones) {
  if (tones.n_elem < (arma::uword)op.taps)
    throw std::invalid_argument("tone set smaller than the tap count");
  const arma::cx_mat expansion = op.tap_map.rows(tones);  // |set| x L

  ToneRecovery rec;
  rec.inverse = arma::pinv(expansion);
  const arma::cx_mat residual = rec.inverse * expansion - arma::eye<arma::cx_mat>(op.taps, op.taps);
  if (arma::norm(residual, "fro") > 1e-9)
    throw std::invalid_argument("tone set does not identify the taps");
  const arma::cx_mat couplings = op.tap_map * rec.inverse;  // m_sum x |set|
  rec.energy = arma::square(arma::abs(couplings));
  return rec;
}

arma::cx_vec recover_taps(const ToneRecovery& rec, const arma::cx_vec& tone_values) {
  if (tone_values.n_elem != rec.inverse.n_cols)
    throw std::invalid_argument("tone vector does not match the recovery set");
  return rec.inverse * tone_values;
}

double recovered_tone_variance(const ToneRecovery& rec, int tone,
                               double tone_variance, const arma::vec& theta_diag) {
  if (tone < 0 || (arma::uword)tone >= rec.energy.n_rows)
    throw std::invalid_argument("tone index out of range");
  if (theta_diag.n_elem != rec.energy.n_cols)
    throw std::invalid_argument("one predicted variance per observed tone required");
  double var = tone_variance;
  for (arma::uword q = 0; q < theta_diag.n_elem; ++q)
    var -= rec.energy(tone, q) * (tone_variance - theta_diag(q));
  return var;
}

}  // namespace mddsim
