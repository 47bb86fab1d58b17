/**
 * @file simulate.cpp
 * @brief Monte Carlo engine driving schedules over AR(1) channel draws.
 */
#include "mddsim/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mddsim/phylink.hpp"
#include "mddsim/pilot.hpp"
#include "mddsim/prediction.hpp"
#include "mddsim/rng.hpp"

namespace mddsim {

const char* to_string(ToneClass c) {
  switch (c) {
    case ToneClass::Dl: return "DL";
    case ToneClass::Ul: return "UL";
    case ToneClass::All: return "all";
  }
  return "?";
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::RateMcLb: return "rate_mc_lb";
    case Metric::RateClosed: return "rate_closed";
    case Metric::Nmse: return "nmse";
  }
  return "?";
}

namespace {

constexpr long kTrialBlock = 32;  // accumulator blocks merged in index order

arma::uvec spread_subset(const arma::uvec& set, int count) {
  if ((int)set.n_elem <= count) return set;
  arma::uvec out(count);
  for (int q = 0; q < count; ++q) {
    const double pos =
        count == 1 ? 0.0 : static_cast<double>(q) * (set.n_elem - 1) / (count - 1);
    out(q) = set(static_cast<arma::uword>(std::llround(pos)));
  }
  return out;
}

// Accumulated statistics for one (symbol, user, direction) cell.
struct CellAcc {
  DlRateAccumulator mc_dl;
  UlRateAccumulator mc_ul;
  double closed_sum = 0.0;
  double err_sum = 0.0;
  double chan_sum = 0.0;

  void merge(const CellAcc& o) {
    mc_dl.merge(o.mc_dl);
    mc_ul.merge(o.mc_ul);
    closed_sum += o.closed_sum;
    err_sum += o.err_sum;
    chan_sum += o.chan_sum;
  }
};

struct Accums {
  std::vector<std::vector<CellAcc>> dl, ul;  // [symbol-1][user]
  long zf_discards = 0;

  Accums(int length, int users)
      : dl(length, std::vector<CellAcc>(users)),
        ul(length, std::vector<CellAcc>(users)) {}

  void merge(const Accums& o) {
    for (size_t i = 0; i < dl.size(); ++i)
      for (size_t d = 0; d < dl[i].size(); ++d) {
        dl[i][d].merge(o.dl[i][d]);
        ul[i][d].merge(o.ul[i][d]);
      }
    zf_discards += o.zf_discards;
  }
};

// Immutable per-run context shared by all trials.
struct RunContext {
  const SystemConfig* cfg = nullptr;
  const FrameSchedule* sched = nullptr;
  double alpha = 0.0;
  OfdmOperator op;
  SubcarrierPlan plan;
  PilotBook book;
  arma::uvec eval_dl, eval_ul, eval_all;
  arma::cx_mat w_dl, w_ul, w_all;  // eval expansions, rows = eval tones

  bool uses_wiener = false;
  bool uses_dd = false;
  bool dd_recovery = false;        // downlink rebuilt from tap-domain recovery
  arma::uvec obs_tones;            // tones carrying decision-directed observations
  arma::uvec obs_rows_in_book;     // row of each obs tone within the pilot book
  arma::cx_mat w_obs;
  std::unordered_map<arma::uword, arma::uword> obs_row_of_tone;
  ToneRecovery recovery;

  double p_pilot = 0.0;
  double noise = 0.0;
  double bs_si_on = 0.0;  // residual at the BS receiver while downlink is on
  double mt_si_on = 0.0;  // residual at a terminal while its uplink is on
  std::vector<char> dl_active, ul_active;  // [symbol-1]

  double dl_power(const SymbolPlan& s) const {
    return cfg->bs_power_watts() /
           (s.dl_all_tones ? cfg->subcarriers_total : cfg->subcarriers_dl);
  }
  double ul_data_power(const SymbolPlan& s) const {
    return cfg->mt_power_watts() /
           (s.ul_all_tones ? cfg->subcarriers_total : cfg->subcarriers_ul);
  }
  double bs_si(int symbol) const { return dl_active[symbol - 1] ? bs_si_on : 0.0; }
  double mt_si(int symbol) const { return ul_active[symbol - 1] ? mt_si_on : 0.0; }
};

RunContext make_context(const SystemConfig& cfg, const FrameSchedule& sched,
                        double velocity_kmh, int eval_tones_per_class) {
  if (eval_tones_per_class < 1)
    throw std::invalid_argument("need at least one evaluation tone per class");
  const auto violations = validate_schedule(sched);
  if (!violations.empty())
    throw std::logic_error("invalid schedule: " + violations.front());

  RunContext c;
  c.cfg = &cfg;
  c.sched = &sched;
  c.alpha = FadingParams::from_velocity(cfg.carrier_hz, cfg.symbol_duration_s,
                                        velocity_kmh)
                .ar1_alpha;
  c.op = OfdmOperator::make(cfg.subcarriers_total, cfg.delay_taps);
  c.plan = SubcarrierPlan::evenly_spaced(cfg.subcarriers_total, cfg.subcarriers_ul);

  const bool pilots_all_tones =
      sched.symbols[sched.pilot_positions.front() - 1].ul_all_tones;
  const arma::uvec pilot_tones =
      pilots_all_tones ? arma::regspace<arma::uvec>(0, cfg.subcarriers_total - 1)
                       : c.plan.ul;
  c.book = PilotBook::make(c.op, pilot_tones, cfg.users);
  c.p_pilot = cfg.mt_power_watts() / static_cast<double>(c.book.tones.n_elem);

  c.eval_dl = spread_subset(c.plan.dl, eval_tones_per_class);
  c.eval_ul = spread_subset(c.plan.ul, eval_tones_per_class);
  c.eval_all = spread_subset(arma::regspace<arma::uvec>(0, cfg.subcarriers_total - 1),
                             eval_tones_per_class);
  c.w_dl = c.op.tap_map.rows(c.eval_dl);
  c.w_ul = c.op.tap_map.rows(c.eval_ul);
  c.w_all = c.op.tap_map.rows(c.eval_all);

  for (const auto& sp : sched.symbols) {
    c.dl_active.push_back(sp.dl_data ? 1 : 0);
    c.ul_active.push_back(sp.ul_pilot || sp.ul_data ? 1 : 0);
    for (const Predictor* p : {&sp.dl_predictor, &sp.ul_predictor}) {
      if (p->kind == PredictorKind::Wiener) c.uses_wiener = true;
      if (p->kind == PredictorKind::DecisionDirected) c.uses_dd = true;
    }
    // Per-tone decision-directed predictions across users have rank bounded
    // by the window length, so zero-forcing always works on tap-recovered
    // estimates rebuilt from the whole observation band.
    if (sp.dl_data && sp.dl_predictor.kind == PredictorKind::DecisionDirected)
      c.dd_recovery = true;
  }

  if (c.uses_dd) {
    const arma::uvec all_tones =
        arma::regspace<arma::uvec>(0, cfg.subcarriers_total - 1);
    c.obs_tones = (sched.duplex == Duplex::Mdd) ? c.plan.ul
                  : c.dd_recovery              ? all_tones
                                               : c.eval_all;
    c.w_obs = c.op.tap_map.rows(c.obs_tones);
    c.obs_rows_in_book.set_size(c.obs_tones.n_elem);
    for (arma::uword q = 0; q < c.obs_tones.n_elem; ++q) {
      const arma::uvec hit = arma::find(c.book.tones == c.obs_tones(q), 1);
      if (hit.is_empty())
        throw std::logic_error("observation tone outside the pilot band");
      c.obs_rows_in_book(q) = hit(0);
      c.obs_row_of_tone[c.obs_tones(q)] = q;
    }
    if (c.dd_recovery) c.recovery = ToneRecovery::make(c.op, c.obs_tones);
  }

  const bool ibfd = sched.duplex == Duplex::Ibfd;
  const double sic_bs = ibfd ? cfg.ibfd_sic_bs() : cfg.sic_bs();
  const double sic_mt = ibfd ? cfg.ibfd_sic_mt() : cfg.sic_mt();
  c.noise = cfg.noise_watts();
  c.bs_si_on = residual_self_interference(cfg.bs_power_watts(), sic_bs);
  c.mt_si_on = residual_self_interference(cfg.mt_power_watts(), sic_mt);
  return c;
}

// Observations kept for the decision-directed window (pilot or data symbol).
struct UlRecord {
  int symbol = 0;
  arma::cx_mat obs;  // obs tones x antennas
  arma::cx_mat tx;   // users x obs tones (known transmitted values)
  double power = 0.0;
  double noise_var = 0.0;  // thermal + BS-side residual at this symbol
};

struct PilotRecord {
  int symbol = 0;
  arma::cx_cube proj;  // taps x antennas x users (matched projections)
};

template <typename Rec>
const Rec& find_record(const std::deque<Rec>& records, int symbol) {
  for (const auto& r : records)
    if (r.symbol == symbol) return r;
  throw std::logic_error("predictor references a symbol with no stored observation");
}

// One decision-directed design/prediction pass over a set of obs-tone rows.
struct DdPass {
  arma::cx_cube preds;  // users x antennas x |rows|
  arma::mat theta;      // users x |rows| predicted-part variances
};

DdPass dd_pass(const RunContext& c, const std::deque<UlRecord>& records,
               const std::vector<int>& window, int symbol,
               const arma::vec& tone_var, const arma::uvec& rows) {
  const int users = c.cfg->users;
  const int n = c.cfg->bs_antennas;
  const arma::uword tau = window.size();

  std::vector<const UlRecord*> recs(tau);
  DdDesign d;
  d.ages.resize(tau);
  d.obs_noise.resize(tau);
  for (arma::uword k = 0; k < tau; ++k) {
    recs[k] = &find_record(records, window[k]);
    d.ages[k] = symbol - window[k];
    d.obs_noise[k] = recs[k]->noise_var;
    if (std::abs(recs[k]->power - recs[0]->power) > 1e-18 * recs[0]->power)
      throw std::logic_error("mixed uplink powers within one prediction window");
  }
  d.tx_power = recs[0]->power;
  d.alpha = c.alpha;
  d.tone_variances = tone_var;
  d.symbols.set_size(users, tau);

  DdPass out;
  out.preds.set_size(users, n, rows.n_elem);
  out.theta.set_size(users, rows.n_elem);
  arma::cx_mat obs_block(tau, n);
  for (arma::uword r = 0; r < rows.n_elem; ++r) {
    const arma::uword q = rows(r);
    for (arma::uword k = 0; k < tau; ++k) {
      d.symbols.col(k) = recs[k]->tx.col(q);
      obs_block.row(k) = recs[k]->obs.row(q);
    }
    const DdFilter f = design_dd(d);
    out.preds.slice(r) = f.predict(obs_block);
    for (int u = 0; u < users; ++u) out.theta(u, r) = f.predicted_variance(u);
  }
  return out;
}

// Downlink metric accumulation at one symbol over one evaluation-tone set.
// Degenerate precoder instances lose only their Monte-Carlo sample.
void accumulate_dl(const RunContext& c, const SymbolPlan& plan,
                   const std::vector<arma::cx_mat>& truth,  // per tone, N x D
                   const std::vector<arma::cx_mat>& est,    // per tone, N x D
                   const arma::mat& pred_var,               // tones x users
                   const arma::vec& tone_var, std::vector<CellAcc>& cells,
                   long& zf_discards) {
  const int users = c.cfg->users;
  const double p = c.dl_power(plan);
  const double si = c.mt_si(plan.index);
  const size_t tones = truth.size();

  arma::cx_mat f;
  arma::cx_vec gains;
  arma::vec cross;
  arma::vec closed(users, arma::fill::zeros);
  for (size_t e = 0; e < tones; ++e) {
    const bool usable = try_zf_precoder(est[e], f);
    if (!usable) ++zf_discards;
    if (usable) dl_zf_terms(truth[e], f, gains, cross);
    for (int d = 0; d < users; ++d) {
      if (usable) cells[d].mc_dl.add(gains(d), cross(d));
      cells[d].err_sum += std::pow(arma::norm(est[e].col(d) - truth[e].col(d)), 2);
      cells[d].chan_sum += std::pow(arma::norm(truth[e].col(d)), 2);
      closed(d) += dl_rate_closed(p, c.cfg->bs_antennas, users, pred_var(e, d),
                                  tone_var(d), si, c.noise);
    }
  }
  for (int d = 0; d < users; ++d) cells[d].closed_sum += closed(d) / tones;
}

// Uplink metric accumulation (matched filter on the predictions).
void accumulate_ul(const RunContext& c, const SymbolPlan& plan,
                   const std::vector<arma::cx_mat>& truth,
                   const std::vector<arma::cx_mat>& est,
                   const arma::mat& pred_var, const arma::vec& tone_var,
                   std::vector<CellAcc>& cells) {
  const int users = c.cfg->users;
  const double p = c.ul_data_power(plan);
  const double si = c.bs_si(plan.index);
  const double beta_total = arma::sum(tone_var);
  const size_t tones = truth.size();

  arma::vec norm_sq, cross;
  arma::vec closed(users, arma::fill::zeros);
  for (size_t e = 0; e < tones; ++e) {
    ul_mrc_terms(truth[e], est[e], norm_sq, cross);
    for (int d = 0; d < users; ++d) {
      cells[d].mc_ul.add(norm_sq(d), cross(d));
      cells[d].err_sum += std::pow(arma::norm(est[e].col(d) - truth[e].col(d)), 2);
      cells[d].chan_sum += std::pow(arma::norm(truth[e].col(d)), 2);
      closed(d) += ul_rate_closed(p, c.cfg->bs_antennas, pred_var(e, d),
                                  beta_total - tone_var(d), si, c.noise);
    }
  }
  for (int d = 0; d < users; ++d) cells[d].closed_sum += closed(d) / tones;
}

void run_trial(const RunContext& c, const std::vector<ChannelStats>& stats,
               const arma::vec& tone_var, std::uint64_t seed, long trial,
               Accums& acc) {
  const SystemConfig& cfg = *c.cfg;
  const FrameSchedule& sched = *c.sched;
  const int users = cfg.users;
  const int n = cfg.bs_antennas;
  const int taps = cfg.delay_taps;
  const int m_sum = cfg.subcarriers_total;

  RandomStream chan_rng = RandomStream::for_trial(seed, trial, 0);
  RandomStream noise_rng = RandomStream::for_trial(seed, trial, 1);
  RandomStream data_rng = RandomStream::for_trial(seed, trial, 2);

  TapState st = init_taps(stats, n, chan_rng);

  std::deque<PilotRecord> pilot_records;
  std::deque<UlRecord> ul_records;

  for (int i = 1; i <= sched.length; ++i) {
    if (i > 1) evolve_ar1(st, c.alpha, stats, chan_rng);
    const SymbolPlan& plan = sched.symbols[i - 1];
    const double rx_si = c.bs_si(i);

    // ---- Uplink pilot: one received vector per antenna, then projections.
    if (plan.ul_pilot) {
      arma::cx_mat y(c.book.tones.n_elem, n);
      arma::cx_mat g(taps, users);
      for (int j = 0; j < n; ++j) {
        for (int d = 0; d < users; ++d) g.col(d) = st.taps.slice(d).col(j);
        y.col(j) = compose_received_pilot(c.book, g, c.p_pilot, rx_si, c.noise,
                                          noise_rng);
      }
      if (c.uses_wiener) {
        PilotRecord rec;
        rec.symbol = i;
        rec.proj.set_size(taps, n, users);
        for (int d = 0; d < users; ++d)
          for (int j = 0; j < n; ++j)
            rec.proj.slice(d).col(j) = project_observation(c.book, d, y.col(j));
        pilot_records.push_back(std::move(rec));
      }
      if (c.uses_dd) {
        UlRecord rec;
        rec.symbol = i;
        rec.obs = y.rows(c.obs_rows_in_book);
        rec.tx = c.book.symbols.rows(c.obs_rows_in_book).st();
        rec.power = c.p_pilot;
        rec.noise_var = c.noise + rx_si;
        ul_records.push_back(std::move(rec));
      }
    }

    // ---- Uplink data: composite observation with genie-known payloads.
    if (plan.ul_data && c.uses_dd) {
      const double p = c.ul_data_power(plan);
      UlRecord rec;
      rec.symbol = i;
      rec.power = p;
      rec.noise_var = c.noise + rx_si;
      rec.tx.set_size(users, c.obs_tones.n_elem);
      for (int d = 0; d < users; ++d)
        for (arma::uword q = 0; q < c.obs_tones.n_elem; ++q)
          rec.tx(d, q) = data_rng.qam16();
      rec.obs.zeros(c.obs_tones.n_elem, n);
      for (int d = 0; d < users; ++d) {
        const arma::cx_mat h_d = c.w_obs * st.taps.slice(d);  // tones x N
        rec.obs += h_d.each_col() % rec.tx.row(d).st();
      }
      rec.obs *= std::sqrt(p);
      for (arma::uword q = 0; q < c.obs_tones.n_elem; ++q)
        for (int j = 0; j < n; ++j)
          rec.obs(q, j) += noise_rng.cgaussian(rec.noise_var);
      ul_records.push_back(std::move(rec));
    }

    if (!plan.dl_data && !plan.ul_data) continue;

    // ---- True channels on the evaluation sets.
    const arma::cx_mat& w_dl_eval = plan.dl_all_tones ? c.w_all : c.w_dl;
    const arma::uvec& dl_tones = plan.dl_all_tones ? c.eval_all : c.eval_dl;
    const arma::cx_mat& w_ul_eval = plan.ul_all_tones ? c.w_all : c.w_ul;
    const arma::uvec& ul_tones = plan.ul_all_tones ? c.eval_all : c.eval_ul;

    auto truth_for = [&](const arma::cx_mat& w) {
      std::vector<arma::cx_mat> truth(w.n_rows, arma::cx_mat(n, users));
      for (int d = 0; d < users; ++d) {
        const arma::cx_mat t = w * st.taps.slice(d);  // tones x N
        for (arma::uword e = 0; e < w.n_rows; ++e) truth[e].col(d) = t.row(e).st();
      }
      return truth;
    };

    // ---- Wiener predictions (flat predicted variance across tones).
    auto wiener_predict = [&](const Predictor& pred, const arma::cx_mat& w_eval,
                              std::vector<arma::cx_mat>& est, arma::mat& pred_var) {
      const arma::uword tau = pred.observations.size();
      est.assign(w_eval.n_rows, arma::cx_mat(n, users));
      pred_var.set_size(w_eval.n_rows, users);
      WienerDesign d;
      d.ages.resize(tau);
      d.obs_noise.resize(tau);
      std::vector<const PilotRecord*> recs(tau);
      for (arma::uword k = 0; k < tau; ++k) {
        const int t = pred.observations[k];
        recs[k] = &find_record(pilot_records, t);
        d.ages[k] = i - t;
        d.obs_noise[k] =
            pilot_context(c.book.tones.n_elem, m_sum, c.p_pilot, c.noise, c.bs_si(t))
                .noise;
      }
      d.obs_gain = pilot_context(c.book.tones.n_elem, m_sum, c.p_pilot, 0.0, 0.0).gain;
      d.alpha = c.alpha;
      d.taps = taps;
      for (int u = 0; u < users; ++u) {
        d.tap_variance = stats[u].tap_variance();
        const WienerFilter f = design_wiener(d);
        arma::cx_mat g(taps, n, arma::fill::zeros);
        for (arma::uword k = 0; k < tau; ++k)
          g += f.coeff(k) * recs[k]->proj.slice(u);
        const arma::cx_mat values = w_eval * g;  // tones x N
        for (arma::uword e = 0; e < w_eval.n_rows; ++e)
          est[e].col(u) = values.row(e).st();
        pred_var.col(u).fill(f.predicted_tone_variance(m_sum));
      }
    };

    // ---- Decision-directed predictions, shared between links when the
    // windows coincide (both links predict from the same recent symbols).
    const bool dl_dd = plan.dl_data &&
                       plan.dl_predictor.kind == PredictorKind::DecisionDirected;
    const bool ul_dd = plan.ul_data &&
                       plan.ul_predictor.kind == PredictorKind::DecisionDirected;

    DdPass pass;
    arma::uvec pass_rows;
    bool pass_valid = false;
    auto ensure_pass = [&](const std::vector<int>& window) {
      if (pass_valid) return;
      if (dl_dd && c.dd_recovery)
        pass_rows = arma::regspace<arma::uvec>(0, c.obs_tones.n_elem - 1);
      else {
        // Direct prediction: only the rows feeding metric tones are needed.
        std::vector<arma::uword> need;
        if (dl_dd)
          for (arma::uword e = 0; e < dl_tones.n_elem; ++e)
            need.push_back(c.obs_row_of_tone.at(dl_tones(e)));
        if (ul_dd)
          for (arma::uword e = 0; e < ul_tones.n_elem; ++e)
            need.push_back(c.obs_row_of_tone.at(ul_tones(e)));
        std::sort(need.begin(), need.end());
        need.erase(std::unique(need.begin(), need.end()), need.end());
        pass_rows = arma::uvec(need);
      }
      pass = dd_pass(c, ul_records, window, i, tone_var, pass_rows);
      pass_valid = true;
    };
    auto pass_index = [&](arma::uword row) {
      const arma::uvec hit = arma::find(pass_rows == row, 1);
      return hit(0);
    };

    // ---- Downlink metrics.
    if (plan.dl_data) {
      std::vector<arma::cx_mat> est;
      arma::mat pred_var;
      if (plan.dl_predictor.kind == PredictorKind::Wiener) {
        wiener_predict(plan.dl_predictor, w_dl_eval, est, pred_var);
      } else if (c.dd_recovery) {
        ensure_pass(plan.dl_predictor.observations);
        est.assign(dl_tones.n_elem, arma::cx_mat(n, users));
        pred_var.set_size(dl_tones.n_elem, users);
        for (int u = 0; u < users; ++u) {
          arma::cx_mat band(c.obs_tones.n_elem, n);
          for (arma::uword q = 0; q < c.obs_tones.n_elem; ++q)
            band.row(q) = pass.preds.slice(q).row(u);
          const arma::cx_mat g = c.recovery.inverse * band;  // taps x N
          const arma::cx_mat values = w_dl_eval * g;
          const arma::vec theta_u = pass.theta.row(u).t();
          for (arma::uword e = 0; e < dl_tones.n_elem; ++e) {
            est[e].col(u) = values.row(e).st();
            pred_var(e, u) = recovered_tone_variance(c.recovery, dl_tones(e),
                                                     tone_var(u), theta_u);
          }
        }
      } else {
        ensure_pass(plan.dl_predictor.observations);
        est.assign(dl_tones.n_elem, arma::cx_mat(n, users));
        pred_var.set_size(dl_tones.n_elem, users);
        for (arma::uword e = 0; e < dl_tones.n_elem; ++e) {
          const arma::uword s = pass_index(c.obs_row_of_tone.at(dl_tones(e)));
          est[e] = pass.preds.slice(s).st();
          pred_var.row(e) = pass.theta.col(s).t();
        }
      }
      accumulate_dl(c, plan, truth_for(w_dl_eval), est, pred_var, tone_var,
                    acc.dl[i - 1], acc.zf_discards);
    }

    // ---- Uplink metrics.
    if (plan.ul_data && plan.ul_predictor.kind != PredictorKind::None) {
      std::vector<arma::cx_mat> est;
      arma::mat pred_var;
      if (plan.ul_predictor.kind == PredictorKind::Wiener) {
        wiener_predict(plan.ul_predictor, w_ul_eval, est, pred_var);
      } else {
        ensure_pass(plan.ul_predictor.observations);
        if (dl_dd && plan.dl_predictor.observations != plan.ul_predictor.observations)
          throw std::logic_error("links with different windows share one symbol");
        est.assign(ul_tones.n_elem, arma::cx_mat(n, users));
        pred_var.set_size(ul_tones.n_elem, users);
        for (arma::uword e = 0; e < ul_tones.n_elem; ++e) {
          const arma::uword s = pass_index(c.obs_row_of_tone.at(ul_tones(e)));
          est[e] = pass.preds.slice(s).st();
          pred_var.row(e) = pass.theta.col(s).t();
        }
      }
      accumulate_ul(c, plan, truth_for(w_ul_eval), est, pred_var, tone_var,
                    acc.ul[i - 1]);
    }
  }
}

SchemeRunResult finalize(const RunContext& c, const Accums& acc, double velocity_kmh,
                         long trials, std::uint64_t seed) {
  SchemeRunResult out;
  out.schedule = *c.sched;
  out.velocity_kmh = velocity_kmh;
  out.trials = trials;
  out.seed = seed;
  out.zf_discards = acc.zf_discards;

  const int users = c.cfg->users;
  auto emit = [&](const SymbolPlan& plan, bool downlink, ToneClass cls,
                  const std::vector<CellAcc>& cells) {
    const double p = downlink ? c.dl_power(plan) : c.ul_data_power(plan);
    const double si = downlink ? c.mt_si(plan.index) : c.bs_si(plan.index);
    for (Metric m : {Metric::RateMcLb, Metric::RateClosed, Metric::Nmse}) {
      for (int d = 0; d < users; ++d) {
        MetricRow row;
        row.user = d;
        row.symbol_index = plan.index;
        row.tone_class = cls;
        row.downlink = downlink;
        row.metric = m;
        switch (m) {
          case Metric::RateMcLb:
            row.value = downlink ? cells[d].mc_dl.rate(p, si, c.noise)
                                 : cells[d].mc_ul.rate(p, si, c.noise);
            break;
          case Metric::RateClosed:
            row.value = cells[d].closed_sum / trials;
            break;
          case Metric::Nmse:
            row.value = cells[d].err_sum / cells[d].chan_sum;
            break;
        }
        out.rows.push_back(row);
      }
    }
  };

  for (const auto& plan : c.sched->symbols) {
    if (plan.dl_data)
      emit(plan, true, plan.dl_all_tones ? ToneClass::All : ToneClass::Dl,
           acc.dl[plan.index - 1]);
    if (plan.ul_data && plan.ul_predictor.kind != PredictorKind::None)
      emit(plan, false, plan.ul_all_tones ? ToneClass::All : ToneClass::Ul,
           acc.ul[plan.index - 1]);
  }
  return out;
}

}  // namespace

double SchemeRunResult::sum_over_users(Metric metric, int symbol_index,
                                       ToneClass cls, bool downlink) const {
  double total = 0.0;
  for (const auto& r : rows)
    if (r.metric == metric && r.symbol_index == symbol_index &&
        r.tone_class == cls && r.downlink == downlink)
      total += r.value;
  return total;
}

SchemeRunResult run_scheme(const SystemConfig& cfg, const FrameSchedule& schedule,
                           double velocity_kmh, long trials, std::uint64_t seed,
                           int eval_tones_per_class, int threads) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const RunContext c = make_context(cfg, schedule, velocity_kmh, eval_tones_per_class);

  // One fixed user drop per run: geometry belongs to the run identity rather
  // than to the per-trial randomness, so the Monte Carlo moments and the
  // closed forms condition on the same large-scale gains.
  RandomStream geo_rng = RandomStream::for_trial(seed, 0, 3);
  std::vector<ChannelStats> stats(cfg.users);
  arma::vec tone_var(cfg.users);
  for (int d = 0; d < cfg.users; ++d) {
    const double dist = geo_rng.uniform(cfg.distance_min_m, cfg.distance_max_m);
    stats[d] = ChannelStats{std::pow(dist, -cfg.pathloss_exponent), cfg.delay_taps};
    tone_var(d) = stats[d].tone_variance(cfg.subcarriers_total);
  }

  // Trials run in fixed-size blocks that workers pick up independently; the
  // in-order merge keeps floating-point sums identical for any thread count.
  const long n_blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Accums> parts(n_blocks, Accums(schedule.length, cfg.users));
  const unsigned hw = std::thread::hardware_concurrency();
  const long n_workers =
      std::min<long>(threads > 0 ? threads : (hw ? hw : 1), n_blocks);

  std::atomic<long> next{0};
  std::vector<std::exception_ptr> errors(n_workers);
  auto worker = [&](long w) {
    try {
      for (long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
        const long hi = std::min(trials, (b + 1) * kTrialBlock);
        for (long t = b * kTrialBlock; t < hi; ++t)
          run_trial(c, stats, tone_var, seed, t, parts[b]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (n_workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (long w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Accums total(schedule.length, cfg.users);
  for (const auto& part : parts) total.merge(part);
  return finalize(c, total, velocity_kmh, trials, seed);
}

std::vector<SchemeRunResult> run_sweep(const SystemConfig& cfg, const RunSpec& spec) {
  if (spec.schemes.empty()) throw ConfigError("no schemes requested");
  if (spec.velocities_kmh.empty()) throw ConfigError("no velocities requested");
  std::vector<SchemeRunResult> results;
  for (const auto& token : spec.schemes) {
    const FrameSchedule sched = build_schedule(token, cfg);
    for (double v : spec.velocities_kmh)
      results.push_back(run_scheme(cfg, sched, v, spec.trials, spec.seed,
                                   spec.eval_tones_per_class, spec.threads));
  }
  return results;
}

}  // namespace mddsim
