/**
 * @file pilot.hpp
 * @brief Frequency-domain phase-shifted uplink pilots and MMSE tap estimation.
 *
 * All users transmit pilots simultaneously on the uplink tone set. User d
 * sends x_d[m] = exp(j 2 pi (m)(d) s / Mbar) on the m-th uplink tone, with
 * phase stride s = floor(Mbar / D). On an evenly spaced tone set with
 * Mbar >= D*L the per-user matched projectors are exactly orthogonal:
 * P_d^H P_d = (Mbar/M_sum) I_L and P_d^H P_k = 0 for k != d, so projecting
 * the received pilot vector separates the users without interference and
 * leaves white noise of variance (Mbar/M_sum)(sigma^2 + SI) per tap.
 */
#pragma once

#include <armadillo>

#include "mddsim/channel.hpp"

namespace mddsim {

struct PilotBook {
  arma::uvec tones;      // 0-based absolute uplink tone indices (size Mbar)
  arma::cx_mat symbols;  // Mbar x D: pilot value of user d on tone row m
  arma::cx_cube proj;    // Mbar x L x D: P_d = diag(x_d) * W_ul per user
  int phase_stride = 0;  // floor(Mbar / D)
  int m_sum = 0;

  // Requires an evenly spaced tone set and Mbar >= D * taps; throws
  // std::invalid_argument otherwise (orthogonality would break).
  static PilotBook make(const OfdmOperator& op, const arma::uvec& tones,
                        int n_users);
};

// Scalar observation model after matched projection:
//   y_proj = gain * g + CN(0, noise * I_L)
struct PilotContext {
  double gain = 0.0;   // sqrt(p_ul) * Mbar / M_sum
  double noise = 0.0;  // (Mbar / M_sum) * (sigma^2 + si_watts)
};

PilotContext pilot_context(int m_bar, int m_sum, double p_ul, double sigma2,
                           double si_watts);

// Full received pilot vector at one antenna: superposition of all users'
// pilots through their channels plus self-interference and thermal noise.
// `taps` holds one column of length L per user.
arma::cx_vec compose_received_pilot(const PilotBook& book,
                                    const arma::cx_mat& taps, double p_ul,
                                    double si_watts, double noise_watts,
                                    RandomStream& rng);

// Matched projection for one user: P_d^H y (length L).
arma::cx_vec project_observation(const PilotBook& book, int user,
                                 const arma::cx_vec& received);

struct MmseEstimate {
  arma::cx_vec taps;            // filtered tap estimate
  double gain = 0.0;            // scalar MMSE coefficient applied
  double error_variance = 0.0;  // posterior variance per tap
};

// Per-tap scalar MMSE filter for the projected observation.
MmseEstimate mmse_estimate(const arma::cx_vec& projected,
                           const ChannelStats& stats, const PilotContext& ctx);

}  // namespace mddsim
