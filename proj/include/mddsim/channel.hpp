/**
 * @file channel.hpp
 * @brief Time-varying multipath channel model and OFDM subcarrier mapping.
 *
 * Each user-antenna link is an L-tap time-domain impulse response with i.i.d.
 * CN(0, beta/L) taps (uniform power-delay profile). Tap evolution across OFDM
 * symbols follows a first-order autoregression whose coefficient equals the
 * Jakes autocorrelation at one symbol lag, so the model matches the classical
 * J0(2 pi fD Ts k) fading correlation at lags 0 and 1 and decays
 * geometrically beyond. Frequency-domain responses are rows of the unitary
 * DFT applied to the zero-padded taps.
 */
#pragma once

#include <armadillo>

#include "mddsim/rng.hpp"

namespace mddsim {

// J0(2 pi fD Ts |lag|): Jakes fading autocorrelation at a lag measured in
// OFDM symbols. Uses the standard-library cylindrical Bessel function, which
// is series/asymptotic based and accurate to well below 1e-10 here.
double jakes_autocorrelation(int lag_symbols, double doppler_hz,
                             double symbol_duration_s);

struct FadingParams {
  double carrier_hz = 0.0;
  double symbol_duration_s = 0.0;
  double velocity_mps = 0.0;
  double doppler_hz = 0.0;  // fD = v * fc / c
  double ar1_alpha = 0.0;   // J0(2 pi fD Ts)

  static FadingParams from_velocity(double carrier_hz, double symbol_duration_s,
                                    double velocity_kmh);
};

// Large-scale statistics of one user's link.
struct ChannelStats {
  double beta = 1.0;  // pathloss gain (linear)
  int taps = 1;       // L

  double tap_variance() const { return beta / taps; }
  double tone_variance(int m_sum) const { return beta / m_sum; }
};

// Unitary DFT of size m_sum plus its restriction to the first `taps` columns
// (the map from time-domain taps to per-subcarrier responses).
struct OfdmOperator {
  int m_sum = 0;
  int taps = 0;
  arma::cx_mat dft;      // m_sum x m_sum, entries exp(-j2pi pq/M)/sqrt(M)
  arma::cx_mat tap_map;  // m_sum x taps: first columns of dft

  static OfdmOperator make(int m_sum, int taps);

  // Frequency response on all subcarriers for one tap vector.
  arma::cx_vec to_frequency(const arma::cx_vec& g) const { return tap_map * g; }
};

// Disjoint downlink/uplink subcarrier sets covering all m_sum tones. The
// uplink set is evenly spaced (stride m_sum / n_ul), which the pilot design
// requires for exact orthogonality.
struct SubcarrierPlan {
  int m_sum = 0;
  arma::uvec dl;  // 0-based absolute tone indices
  arma::uvec ul;

  static SubcarrierPlan evenly_spaced(int m_sum, int n_ul);
};

// Current taps of every link: cube of shape (taps, antennas, users).
struct TapState {
  int symbol = 1;     // 1-based OFDM symbol index within the frame
  arma::cx_cube taps; // (L, N, D)
};

// Draws the stationary initial state, taps ~ CN(0, beta_d / L).
TapState init_taps(const std::vector<ChannelStats>& users, int n_antennas,
                   RandomStream& rng);

// One AR(1) step: g <- alpha g + sqrt(1 - alpha^2) * CN(0, beta_d / L).
// Keeps the marginal distribution stationary for |alpha| <= 1.
void evolve_ar1(TapState& state, double alpha,
                const std::vector<ChannelStats>& users, RandomStream& rng);

}  // namespace mddsim
