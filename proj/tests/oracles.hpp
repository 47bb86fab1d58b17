/**
 * @file oracles.hpp
 * @brief Independent reference implementations used only by the tests.
 *
 * Everything here is deliberately coded along a different route than the
 * library: the Bessel function as a long-double power series instead of the
 * standard-library special function, and both LMMSE predictors by assembling
 * the full stacked covariance matrices instead of the reduced per-tap or
 * per-tone recursions. Agreement between the two routes is the test.
 */
#pragma once

#include <armadillo>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

// J0(x) by its power series sum_k (-1)^k (x^2/4)^k / (k!)^2 in long double.
// Absolute error stays far below 1e-12 for the |x| <= 20 used in tests.
inline long double bessel_j0(long double x) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= 400; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-30L * (1.0L + std::abs(sum))) break;
  }
  return sum;
}

// ---- Stacked-covariance Wiener reference --------------------------------

struct WienerRef {
  std::vector<long double> coeff;       // one weight per observation
  long double predicted_variance = 0L;  // variance of the predicted part
};

// Solves the full LMMSE system for a scalar AR(1) process of stationary
// variance v observed through y_q = a g[i - age_q] + CN(0, w_q):
//   R c = r,  R(p,q) = a^2 v alpha^|age_p-age_q| + delta_pq w_p,
//             r(q)   = a v alpha^age_q,
// by Gauss-Jordan elimination with partial pivoting in long double.
inline WienerRef wiener_reference(const std::vector<int>& ages, long double a,
                                  const std::vector<long double>& w, long double v,
                                  long double alpha) {
  const std::size_t n = ages.size();
  if (w.size() != n || n == 0) throw std::invalid_argument("wiener_reference: sizes");
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1));
  std::vector<long double> r(n);
  for (std::size_t p = 0; p < n; ++p) {
    r[p] = a * v * std::pow(alpha, static_cast<long double>(ages[p]));
    for (std::size_t q = 0; q < n; ++q) {
      const int gap = std::abs(ages[p] - ages[q]);
      m[p][q] = a * a * v * std::pow(alpha, static_cast<long double>(gap));
      if (p == q) m[p][q] += w[p];
    }
    m[p][n] = r[p];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    std::swap(m[col], m[pivot]);
    if (m[col][col] == 0.0L) throw std::runtime_error("wiener_reference: singular");
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const long double f = m[row][col] / m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
    }
  }
  WienerRef ref;
  ref.coeff.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    ref.coeff[q] = m[q][n] / m[q][q];
    ref.predicted_variance += ref.coeff[q] * r[q];
  }
  return ref;
}

// ---- Stacked-covariance decision-directed reference ----------------------

struct DdRef {
  arma::cx_mat weights;  // users x observations
  arma::cx_mat theta;    // users x users predicted-part covariance
};

// Joint-Gaussian construction on one tone: stack the channel values of every
// user at every observation time into z, express the composite observations
// as y = M z + noise, and read the LMMSE weights off the projected
// covariances R_y = M C M^H + diag(w) and R_ty = C_t M^H.
inline DdRef dd_reference(const std::vector<int>& ages, const arma::cx_mat& symbols,
                          const arma::vec& tone_var,
                          const std::vector<double>& obs_noise, double tx_power,
                          double alpha) {
  const arma::uword users = symbols.n_rows;
  const arma::uword obs = symbols.n_cols;
  if (ages.size() != obs || obs_noise.size() != obs || tone_var.n_elem != users)
    throw std::invalid_argument("dd_reference: sizes");
  const arma::uword dim = users * obs;
  auto idx = [users](arma::uword u, arma::uword q) { return u + q * users; };

  arma::mat c_zz(dim, dim, arma::fill::zeros);
  for (arma::uword u = 0; u < users; ++u)
    for (arma::uword q = 0; q < obs; ++q)
      for (arma::uword r = 0; r < obs; ++r)
        c_zz(idx(u, q), idx(u, r)) =
            tone_var(u) * std::pow(alpha, std::abs(ages[q] - ages[r]));

  arma::cx_mat mix(obs, dim, arma::fill::zeros);
  const double amp = std::sqrt(tx_power);
  for (arma::uword q = 0; q < obs; ++q)
    for (arma::uword u = 0; u < users; ++u) mix(q, idx(u, q)) = amp * symbols(u, q);

  arma::mat c_tz(users, dim, arma::fill::zeros);
  for (arma::uword u = 0; u < users; ++u)
    for (arma::uword q = 0; q < obs; ++q)
      c_tz(u, idx(u, q)) = tone_var(u) * std::pow(alpha, ages[q]);

  arma::cx_mat r_y = mix * arma::cx_mat(c_zz, arma::mat(dim, dim, arma::fill::zeros)) *
                     mix.t();
  for (arma::uword q = 0; q < obs; ++q) r_y(q, q) += obs_noise[q];
  arma::cx_mat r_ty =
      arma::cx_mat(c_tz, arma::mat(users, dim, arma::fill::zeros)) * mix.t();

  DdRef ref;
  ref.weights = arma::solve(r_y, r_ty.t()).t();
  ref.theta = ref.weights * r_ty.t();
  ref.theta = 0.5 * (ref.theta + ref.theta.t());
  return ref;
}

}  // namespace oracle
