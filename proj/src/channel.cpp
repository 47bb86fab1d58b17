#include "mddsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mddsim {

double jakes_autocorrelation(int lag_symbols, double doppler_hz,
                             double symbol_duration_s) {
  if (doppler_hz < 0.0 || symbol_duration_s <= 0.0)
    throw std::invalid_argument("jakes_autocorrelation: bad Doppler/duration");
  const double x =
      2.0 * M_PI * doppler_hz * symbol_duration_s * std::abs(lag_symbols);
  return std::cyl_bessel_j(0.0, x);
}

FadingParams FadingParams::from_velocity(double carrier_hz,
                                         double symbol_duration_s,
                                         double velocity_kmh) {
  if (carrier_hz <= 0.0 || symbol_duration_s <= 0.0 || velocity_kmh < 0.0)
    throw std::invalid_argument("FadingParams: non-positive parameter");
  constexpr double kLightSpeed = 299792458.0;
  FadingParams p;
  p.carrier_hz = carrier_hz;
  p.symbol_duration_s = symbol_duration_s;
  p.velocity_mps = velocity_kmh / 3.6;
  p.doppler_hz = p.velocity_mps * carrier_hz / kLightSpeed;
  p.ar1_alpha = jakes_autocorrelation(1, p.doppler_hz, symbol_duration_s);
  return p;
}

OfdmOperator OfdmOperator::make(int m_sum, int taps) {
  if (m_sum <= 0 || taps <= 0 || taps > m_sum)
    throw std::invalid_argument("OfdmOperator: need 0 < taps <= m_sum");
  OfdmOperator op;
  op.m_sum = m_sum;
  op.taps = taps;
  op.dft.set_size(m_sum, m_sum);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_sum));
  for (int p = 0; p < m_sum; ++p) {
    for (int q = 0; q < m_sum; ++q) {
      const double phase = -2.0 * M_PI * p * q / m_sum;
      op.dft(p, q) = std::polar(scale, phase);
    }
  }
  op.tap_map = op.dft.cols(0, taps - 1);
  return op;
}

SubcarrierPlan SubcarrierPlan::evenly_spaced(int m_sum, int n_ul) {
  if (m_sum <= 0 || n_ul <= 0 || n_ul > m_sum)
    throw std::invalid_argument("SubcarrierPlan: need 0 < n_ul <= m_sum");
  if (m_sum % n_ul != 0)
    throw std::invalid_argument(
        "SubcarrierPlan: n_ul must divide m_sum for even spacing");
  SubcarrierPlan plan;
  plan.m_sum = m_sum;
  const int stride = m_sum / n_ul;
  plan.ul.set_size(n_ul);
  plan.dl.set_size(m_sum - n_ul);
  arma::uword u = 0, d = 0;
  for (int m = 0; m < m_sum; ++m) {
    if (m % stride == 0)
      plan.ul(u++) = m;
    else
      plan.dl(d++) = m;
  }
  return plan;
}

TapState init_taps(const std::vector<ChannelStats>& users, int n_antennas,
                   RandomStream& rng) {
  if (users.empty() || n_antennas <= 0)
    throw std::invalid_argument("init_taps: empty user set or no antennas");
  const int n_taps = users.front().taps;
  for (const auto& u : users)
    if (u.taps != n_taps || u.beta <= 0.0)
      throw std::invalid_argument("init_taps: inconsistent user statistics");

  TapState state;
  state.symbol = 1;
  state.taps.set_size(n_taps, n_antennas, users.size());
  for (std::size_t d = 0; d < users.size(); ++d) {
    const double v = users[d].tap_variance();
    for (int n = 0; n < n_antennas; ++n)
      for (int l = 0; l < n_taps; ++l) state.taps(l, n, d) = rng.cgaussian(v);
  }
  return state;
}

void evolve_ar1(TapState& state, double alpha,
                const std::vector<ChannelStats>& users, RandomStream& rng) {
  if (std::abs(alpha) > 1.0)
    throw std::invalid_argument("evolve_ar1: |alpha| must be <= 1");
  if (users.size() != state.taps.n_slices)
    throw std::invalid_argument("evolve_ar1: user count mismatch");
  const double innovation_scale = 1.0 - alpha * alpha;
  for (std::size_t d = 0; d < users.size(); ++d) {
    const double v = innovation_scale * users[d].tap_variance();
    for (arma::uword n = 0; n < state.taps.n_cols; ++n)
      for (arma::uword l = 0; l < state.taps.n_rows; ++l)
        state.taps(l, n, d) = alpha * state.taps(l, n, d) + rng.cgaussian(v);
  }
  ++state.symbol;
}

}  // namespace mddsim
