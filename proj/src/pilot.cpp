#include "mddsim/pilot.hpp"

#include <stdexcept>

namespace mddsim {

PilotBook PilotBook::make(const OfdmOperator& op, const arma::uvec& tones,
                          int n_users) {
  const int m_bar = static_cast<int>(tones.n_elem);
  if (n_users <= 0) throw std::invalid_argument("PilotBook: no users");
  if (m_bar < n_users * op.taps)
    throw std::invalid_argument(
        "PilotBook: tone count must be >= users * taps for orthogonality");
  if (m_bar > op.m_sum)
    throw std::invalid_argument("PilotBook: more tones than subcarriers");
  // Even spacing across the full band is what makes the projectors exactly
  // orthogonal; reject anything else instead of silently degrading.
  const arma::uword stride = op.m_sum / m_bar;
  if (static_cast<int>(stride) * m_bar != op.m_sum)
    throw std::invalid_argument("PilotBook: tone count must divide m_sum");
  for (int m = 0; m < m_bar; ++m) {
    if (tones(m) != static_cast<arma::uword>(m) * stride)
      throw std::invalid_argument("PilotBook: tones must be evenly spaced");
  }

  PilotBook book;
  book.tones = tones;
  book.m_sum = op.m_sum;
  book.phase_stride = m_bar / n_users;
  book.symbols.set_size(m_bar, n_users);
  book.proj.set_size(m_bar, op.taps, n_users);

  const arma::cx_mat w_ul = op.tap_map.rows(tones);  // Mbar x L
  for (int d = 0; d < n_users; ++d) {
    for (int m = 0; m < m_bar; ++m) {
      const double phase = 2.0 * M_PI * m * d * book.phase_stride / m_bar;
      book.symbols(m, d) = std::polar(1.0, phase);
    }
    book.proj.slice(d) = arma::diagmat(book.symbols.col(d)) * w_ul;
  }
  return book;
}

PilotContext pilot_context(int m_bar, int m_sum, double p_ul, double sigma2,
                           double si_watts) {
  if (m_bar <= 0 || m_sum < m_bar)
    throw std::invalid_argument("pilot_context: bad tone counts");
  if (p_ul < 0.0 || sigma2 < 0.0 || si_watts < 0.0)
    throw std::invalid_argument("pilot_context: negative power");
  const double ratio = static_cast<double>(m_bar) / m_sum;
  return {std::sqrt(p_ul) * ratio, ratio * (sigma2 + si_watts)};
}

arma::cx_vec compose_received_pilot(const PilotBook& book,
                                    const arma::cx_mat& taps, double p_ul,
                                    double si_watts, double noise_watts,
                                    RandomStream& rng) {
  const arma::uword m_bar = book.tones.n_elem;
  if (taps.n_cols != book.proj.n_slices || taps.n_rows != book.proj.n_cols)
    throw std::invalid_argument("compose_received_pilot: tap shape mismatch");
  arma::cx_vec y(m_bar, arma::fill::zeros);
  const double amp = std::sqrt(p_ul);
  for (arma::uword d = 0; d < taps.n_cols; ++d)
    y += amp * (book.proj.slice(d) * taps.col(d));
  const double w = si_watts + noise_watts;
  for (arma::uword m = 0; m < m_bar; ++m) y(m) += rng.cgaussian(w);
  return y;
}

arma::cx_vec project_observation(const PilotBook& book, int user,
                                 const arma::cx_vec& received) {
  if (user < 0 || static_cast<arma::uword>(user) >= book.proj.n_slices)
    throw std::invalid_argument("project_observation: bad user index");
  if (received.n_elem != book.tones.n_elem)
    throw std::invalid_argument("project_observation: bad vector length");
  return book.proj.slice(user).t() * received;
}

MmseEstimate mmse_estimate(const arma::cx_vec& projected,
                           const ChannelStats& stats, const PilotContext& ctx) {
  if (static_cast<int>(projected.n_elem) != stats.taps)
    throw std::invalid_argument("mmse_estimate: tap count mismatch");
  const double v = stats.tap_variance();
  const double a = ctx.gain;
  const double denom = a * a * v + ctx.noise;
  MmseEstimate est;
  est.gain = denom > 0.0 ? a * v / denom : 0.0;
  est.taps = est.gain * projected;
  est.error_variance = v - est.gain * a * v;
  return est;
}

}  // namespace mddsim
