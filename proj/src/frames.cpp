/**
 * @file frames.cpp
 * @brief Frame-schedule construction for all supported duplexing schemes.
 */
#include "mddsim/frames.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mddsim {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Splits "mdd-1(3)" into {"mdd-1", 3}; tokens without a suffix keep fallback.
struct TokenParts {
  std::string family;
  int order;
};

TokenParts split_order_suffix(const std::string& token, int fallback) {
  const auto open = token.find('(');
  if (open == std::string::npos) return {token, fallback};
  if (token.back() != ')' || open + 2 > token.size() - 1)
    throw ConfigError("malformed scheme token: " + token);
  const std::string digits = token.substr(open + 1, token.size() - open - 2);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigError("malformed scheme order in token: " + token);
  return {token.substr(0, open), std::stoi(digits)};
}

std::vector<int> contiguous(int first, int count) {
  std::vector<int> v(count);
  for (int k = 0; k < count; ++k) v[k] = first + k;
  return v;
}

// Up to n symbols from `candidates` (ascending) strictly before i, most
// recent first.
std::vector<int> most_recent(const std::vector<int>& candidates, int i, int n) {
  std::vector<int> out;
  for (auto it = candidates.rbegin(); it != candidates.rend() && (int)out.size() < n; ++it)
    if (*it < i) out.push_back(*it);
  return out;
}

std::vector<SymbolPlan> blank_symbols(int length) {
  std::vector<SymbolPlan> sym(length);
  for (int i = 1; i <= length; ++i) sym[i - 1].index = i;
  return sym;
}

// Half-duplex switching cost: every pilot<->downlink boundary (cyclic across
// the frame edge) takes half a symbol from the adjacent data symbol, and an
// uplink-data -> downlink boundary takes half from the uplink side.
void apply_tdd_weights(std::vector<SymbolPlan>& sym) {
  const int T = static_cast<int>(sym.size());
  auto at = [&](int i) -> const SymbolPlan& {
    return sym[((i - 1) % T + T) % T];
  };
  for (auto& s : sym) {
    const SymbolPlan& prev = at(s.index - 1);
    const SymbolPlan& next = at(s.index + 1);
    double w = 1.0;
    if (s.dl_data) {
      if (prev.ul_pilot) w -= 0.5;
      if (next.ul_pilot) w -= 0.5;
      if (prev.ul_data) w -= 0.0;  // charged to the uplink side
    }
    if (s.ul_data) {
      if (next.dl_data && !next.ul_data) w -= 0.5;
      if (prev.dl_data && !prev.ul_data) w -= 0.5;
    }
    s.weight = w;
  }
}

FrameSchedule base_schedule(const SystemConfig& cfg, Duplex duplex,
                            std::string name, int order) {
  FrameSchedule s;
  s.name = std::move(name);
  s.duplex = duplex;
  s.length = cfg.frame_symbols;
  s.tau_p = cfg.pilot_symbols;
  s.tau_u = cfg.ul_data_symbols;
  s.kappa_p = cfg.early_pilots;
  s.order = order;
  s.symbols = blank_symbols(s.length);
  return s;
}

// ---- Type-I TDD family ------------------------------------------------

// Shared builder: full-band pilots at `pilots`, full-band downlink data on
// every other symbol that has at least one preceding pilot, Wiener
// prediction from up to `order` most recent pilots.
FrameSchedule tdd_type1(const SystemConfig& cfg, const std::string& name,
                        std::vector<int> pilots, int order) {
  FrameSchedule s = base_schedule(cfg, Duplex::Tdd, name, order);
  s.pilot_positions = pilots;
  for (int p : pilots) {
    auto& sp = s.symbols[p - 1];
    sp.ul_pilot = true;
    sp.ul_all_tones = true;
  }
  for (auto& sp : s.symbols) {
    if (sp.ul_pilot) continue;
    auto obs = most_recent(pilots, sp.index, order);
    if (obs.empty()) continue;  // no CSI yet; symbol stays idle
    sp.dl_data = true;
    sp.dl_all_tones = true;
    sp.dl_predictor = {PredictorKind::Wiener, std::move(obs)};
  }
  apply_tdd_weights(s.symbols);
  return s;
}

std::vector<int> scattered_pilots(int length, int tau_p) {
  const int stride = length / tau_p;
  if (stride < 2)
    throw ConfigError("frame too short to scatter " + std::to_string(tau_p) + " pilots");
  std::vector<int> v(tau_p);
  for (int k = 0; k < tau_p; ++k) v[k] = 1 + k * stride;
  return v;
}

std::vector<int> grouped_pilots(int length, int tau_p, int second_start) {
  const int n1 = (tau_p + 1) / 2;
  const int n2 = tau_p - n1;
  if (second_start <= n1 + 1 || second_start + n2 - 1 >= length)
    throw ConfigError("frame too short for grouped pilot placement");
  auto v = contiguous(1, n1);
  auto g2 = contiguous(second_start, n2);
  v.insert(v.end(), g2.begin(), g2.end());
  return v;
}

// ---- Type-I MDD / IBFD family -----------------------------------------

// Pilots on the uplink band every symbol; downlink data runs once `order`
// pilot observations are available. IBFD differs only in the downlink span
// (all tones instead of the downlink band).
FrameSchedule cross_band_type1(const SystemConfig& cfg, const std::string& name,
                               Duplex duplex, int order) {
  if (order < 1 || order >= cfg.frame_symbols)
    throw ConfigError("predictor depth must lie in [1, T-1] for " + name);
  FrameSchedule s = base_schedule(cfg, duplex, name, order);
  s.pilot_positions = contiguous(1, s.length);
  for (auto& sp : s.symbols) {
    sp.ul_pilot = true;
    if (sp.index <= order) continue;
    sp.dl_data = true;
    sp.dl_all_tones = (duplex == Duplex::Ibfd);
    sp.dl_predictor = {PredictorKind::Wiener,
                       most_recent(s.pilot_positions, sp.index, order)};
  }
  return s;
}

// Pilot-adaptation variant: pilots only where needed, downlink everywhere
// else from symbol kappa_p+1 on, borrowing the idle uplink band (all tones,
// and no local transmit self-interference) on pilot-free symbols.
FrameSchedule mdd_pilot_adapted(const SystemConfig& cfg, const std::string& name) {
  FrameSchedule s = base_schedule(cfg, Duplex::Mdd, name, 1);
  if (s.length == 28 && s.tau_p == 7) {
    s.pilot_positions = {1, 5, 9, 14, 18, 23, 27};
  } else {
    // tau_p positions spread over [1, T-1] so the frame tail is covered.
    s.pilot_positions.resize(s.tau_p);
    for (int k = 0; k < s.tau_p; ++k) {
      const double x = 1.0 + (s.length - 2.0) * k / (s.tau_p - 1.0);
      s.pilot_positions[k] = static_cast<int>(std::lround(x));
    }
    for (int k = 1; k < s.tau_p; ++k)
      if (s.pilot_positions[k] <= s.pilot_positions[k - 1])
        throw ConfigError("frame too short for pilot adaptation");
  }
  for (int p : s.pilot_positions) s.symbols[p - 1].ul_pilot = true;
  for (auto& sp : s.symbols) {
    if (sp.index <= s.kappa_p) continue;
    sp.dl_data = true;
    sp.dl_all_tones = !sp.ul_pilot;
    sp.dl_predictor = {PredictorKind::Wiener,
                       most_recent(s.pilot_positions, sp.index, 1)};
  }
  return s;
}

// ---- Type-II family ----------------------------------------------------

std::vector<int> ul_active_symbols(const std::vector<SymbolPlan>& sym) {
  std::vector<int> v;
  for (const auto& sp : sym)
    if (sp.ul_pilot || sp.ul_data) v.push_back(sp.index);
  return v;
}

// Decision-directed prediction needs at least one detected data symbol in
// its window; until uplink data has been observed the symbol falls back to
// Wiener prediction over the pilots alone.
Predictor type2_predictor(const FrameSchedule& s, const std::vector<int>& active,
                          int i) {
  auto window = most_recent(active, i, s.tau_p);
  const auto& pil = s.pilot_positions;
  const bool has_data = std::any_of(window.begin(), window.end(), [&](int t) {
    return std::find(pil.begin(), pil.end(), t) == pil.end();
  });
  if (has_data) return {PredictorKind::DecisionDirected, std::move(window)};
  return {PredictorKind::Wiener, most_recent(pil, i, s.order)};
}

// Shared type-II TDD builder: full-band pilots, an uplink data phase, then
// full-band downlink on the remaining symbols. Both links use the per-tone
// decision-directed predictor over the tau_p most recent uplink-active
// symbols (pilots count as perfectly known symbols).
FrameSchedule tdd_type2(const SystemConfig& cfg, const std::string& name,
                        std::vector<int> pilots, int ul_first) {
  FrameSchedule s = base_schedule(cfg, Duplex::Tdd, name, cfg.predictor_order);
  s.pilot_positions = pilots;
  for (int p : pilots) {
    auto& sp = s.symbols[p - 1];
    sp.ul_pilot = true;
    sp.ul_all_tones = true;
  }
  // tau_u full uplink-data symbols plus the half symbol before the switch.
  int placed = 0;
  int i = ul_first;
  while (placed < s.tau_u + 1) {
    if (i > s.length) throw ConfigError("frame too short for uplink phase in " + name);
    auto& sp = s.symbols[i - 1];
    if (!sp.ul_pilot) {
      sp.ul_data = true;
      sp.ul_all_tones = true;
      ++placed;
    }
    ++i;
  }
  const int dl_first = i;
  if (dl_first > s.length)
    throw ConfigError("frame too short for a downlink phase in " + name);
  for (int j = dl_first; j <= s.length; ++j) {
    auto& sp = s.symbols[j - 1];
    if (sp.ul_pilot) continue;
    sp.dl_data = true;
    sp.dl_all_tones = true;
  }
  const auto active = ul_active_symbols(s.symbols);
  for (auto& sp : s.symbols) {
    if (sp.ul_data) sp.ul_predictor = type2_predictor(s, active, sp.index);
    if (sp.dl_data) sp.dl_predictor = type2_predictor(s, active, sp.index);
  }
  apply_tdd_weights(s.symbols);
  return s;
}

// Type-II MDD: pilots open the frame on the uplink band, downlink starts at
// kappa_p+1 on its own band (Wiener over the pilots seen so far, then
// decision-directed once uplink data flows), uplink data follows the pilots.
FrameSchedule mdd_type2(const SystemConfig& cfg, const std::string& name) {
  FrameSchedule s = base_schedule(cfg, Duplex::Mdd, name, cfg.predictor_order);
  s.pilot_positions = contiguous(1, s.tau_p);
  if (s.tau_p >= s.length)
    throw ConfigError("frame too short for an uplink data phase in " + name);
  for (int p : s.pilot_positions) s.symbols[p - 1].ul_pilot = true;
  for (auto& sp : s.symbols)
    if (sp.index > s.tau_p) sp.ul_data = true;
  const auto active = ul_active_symbols(s.symbols);
  for (auto& sp : s.symbols) {
    if (sp.index > s.kappa_p) {
      sp.dl_data = true;
      sp.dl_predictor = type2_predictor(s, active, sp.index);
    }
    if (sp.ul_data) sp.ul_predictor = type2_predictor(s, active, sp.index);
  }
  return s;
}

}  // namespace

FrameSchedule build_schedule(const std::string& token, const SystemConfig& cfg) {
  const auto errors = validate(cfg);
  if (!errors.empty()) throw ConfigError("invalid config: " + errors.front());

  const auto [family, order] = split_order_suffix(lower(token), cfg.predictor_order);
  const std::string ord = "(" + std::to_string(order) + ")";
  const int T = cfg.frame_symbols;
  const int tau_p = cfg.pilot_symbols;

  if (family == "tdd-1")
    return tdd_type1(cfg, "TDD-1", contiguous(1, tau_p), cfg.predictor_order);
  if (family == "tdd-1-nop")
    return tdd_type1(cfg, "TDD-1-NOP", contiguous(1, tau_p), 1);
  if (family == "tdd-1-es")
    return tdd_type1(cfg, "TDD-1-ES", scattered_pilots(T, tau_p), cfg.predictor_order);
  if (family == "tdd-1-tg")
    return tdd_type1(cfg, "TDD-1-TG", grouped_pilots(T, tau_p, (T + 1) / 2),
                     cfg.predictor_order);
  if (family == "mdd-1")
    return cross_band_type1(cfg, "MDD-1" + ord, Duplex::Mdd, order);
  if (family == "ibfd-1")
    return cross_band_type1(cfg, "IBFD-1" + ord, Duplex::Ibfd, order);
  if (family == "mdd-1-pa")
    return mdd_pilot_adapted(cfg, "MDD-1-PA");
  if (family == "tdd-2")
    return tdd_type2(cfg, "TDD-2", contiguous(1, tau_p), tau_p + 1);
  if (family == "tdd-2-tg") {
    // Second pilot group centered in the downlink phase, so the tail of the
    // frame rides on fresh training instead of the frozen uplink window.
    const int n1 = (tau_p + 1) / 2;
    const int dl_first = n1 + 1 + cfg.ul_data_symbols + 1;
    const int second = dl_first + (T - dl_first + 1 - (tau_p - n1) + 1) / 2;
    return tdd_type2(cfg, "TDD-2-TG", grouped_pilots(T, tau_p, second), n1 + 1);
  }
  if (family == "mdd-2")
    return mdd_type2(cfg, "MDD-2");
  throw ConfigError("unknown scheme token: " + token);
}

std::vector<std::string> validate_schedule(const FrameSchedule& s) {
  std::vector<std::string> out;
  auto fail = [&](const std::string& m) { out.push_back(m); };

  if ((int)s.symbols.size() != s.length)
    fail("symbol list length does not match frame length");
  for (int i = 1; i <= (int)s.symbols.size(); ++i)
    if (s.symbols[i - 1].index != i) {
      fail("symbol indices are not 1..T in order");
      break;
    }
  if (s.pilot_positions.empty()) fail("schedule has no pilots");
  for (int p : s.pilot_positions)
    if (p < 1 || p > s.length || !s.symbols[p - 1].ul_pilot)
      fail("pilot position " + std::to_string(p) + " is not a pilot symbol");
  for (const auto& sp : s.symbols)
    if (sp.ul_pilot &&
        std::find(s.pilot_positions.begin(), s.pilot_positions.end(), sp.index) ==
            s.pilot_positions.end())
      fail("pilot symbol " + std::to_string(sp.index) + " missing from position list");

  const auto active = ul_active_symbols(s.symbols);
  auto check_predictor = [&](const SymbolPlan& sp, const Predictor& p,
                             const char* which) {
    const std::string tag =
        "symbol " + std::to_string(sp.index) + " " + which + " predictor: ";
    if (p.kind == PredictorKind::None) {
      fail(tag + "missing");
      return;
    }
    if (p.observations.empty()) fail(tag + "no observations");
    int last = s.length + 1;
    for (int o : p.observations) {
      if (o < 1 || o >= sp.index) fail(tag + "non-causal observation");
      if (o >= last) fail(tag + "observations not strictly decreasing");
      last = o;
      const bool is_pilot = o >= 1 && o <= s.length && s.symbols[o - 1].ul_pilot;
      const bool is_active = std::find(active.begin(), active.end(), o) != active.end();
      if (p.kind == PredictorKind::Wiener && !is_pilot)
        fail(tag + "Wiener observation is not a pilot symbol");
      if (p.kind == PredictorKind::DecisionDirected && !is_active)
        fail(tag + "decision-directed observation has no uplink activity");
    }
  };

  double switch_loss = 0.0;
  for (const auto& sp : s.symbols) {
    if (s.duplex == Duplex::Tdd && sp.dl_data && (sp.ul_pilot || sp.ul_data))
      fail("half-duplex symbol " + std::to_string(sp.index) + " is bidirectional");
    if (s.duplex == Duplex::Mdd && sp.dl_all_tones && (sp.ul_pilot || sp.ul_data))
      fail("cross-band symbol " + std::to_string(sp.index) +
           " claims all tones while the uplink band is busy");
    if (s.duplex != Duplex::Tdd && sp.weight != 1.0)
      fail("no-switching scheme has a reduced weight at symbol " +
           std::to_string(sp.index));
    if (sp.weight < 0.0 || sp.weight > 1.0)
      fail("weight out of range at symbol " + std::to_string(sp.index));
    switch_loss += 1.0 - sp.weight;
    if (sp.dl_data) check_predictor(sp, sp.dl_predictor, "downlink");
    if (sp.ul_data) check_predictor(sp, sp.ul_predictor, "uplink");
    if (!sp.dl_data && sp.dl_predictor.kind != PredictorKind::None)
      fail("idle downlink carries a predictor at symbol " + std::to_string(sp.index));
  }
  if (s.duplex == Duplex::Tdd) {
    // Count direction changes around the cyclic frame; each costs half.
    int transitions = 0;
    for (int i = 1; i <= s.length; ++i) {
      const auto& a = s.symbols[i - 1];
      const auto& b = s.symbols[i % s.length];
      const bool a_dl = a.dl_data;
      const bool b_dl = b.dl_data;
      const bool a_ul = a.ul_pilot || a.ul_data;
      const bool b_ul = b.ul_pilot || b.ul_data;
      if ((a_dl && b_ul) || (a_ul && b_dl)) ++transitions;
    }
    if (std::abs(switch_loss - 0.5 * transitions) > 1e-12)
      fail("switching loss does not match direction-change count");
  }
  return out;
}

std::string to_table(const FrameSchedule& s) {
  std::ostringstream os;
  os << s.name << "  T=" << s.length << "  duplex="
     << (s.duplex == Duplex::Tdd ? "TDD" : s.duplex == Duplex::Mdd ? "MDD" : "IBFD")
     << "\n";
  os << " sym | DL         | UL         |  w  | csi\n";
  os << "-----+------------+------------+-----+----------------\n";
  auto span = [](bool all) { return all ? "all tones " : "own band  "; };
  for (const auto& sp : s.symbols) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%.2f", sp.weight);
    os << (sp.index < 10 ? "   " : "  ") << sp.index << " | ";
    os << (sp.dl_data ? std::string("data ") + span(sp.dl_all_tones)
                      : std::string("-          "))
       << "| ";
    if (sp.ul_pilot && sp.ul_data)
      os << "pilot+data ";
    else if (sp.ul_pilot)
      os << "pilot      ";
    else if (sp.ul_data)
      os << std::string("data ") + span(sp.ul_all_tones);
    else
      os << "-          ";
    os << "| " << buf << " | ";
    const Predictor& p = sp.dl_data ? sp.dl_predictor : sp.ul_predictor;
    if (p.kind == PredictorKind::None) {
      os << "-";
    } else {
      os << (p.kind == PredictorKind::Wiener ? "WP[" : "DD[");
      for (size_t k = 0; k < p.observations.size(); ++k)
        os << (k ? "," : "") << p.observations[k];
      os << "]";
      if (sp.dl_data && sp.ul_data) os << " (dl)";
    }
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> known_scheme_tokens() {
  return {"tdd-1", "tdd-1-nop", "tdd-1-es", "tdd-1-tg", "mdd-1",
          "mdd-1-pa", "tdd-2",   "tdd-2-tg", "mdd-2",    "ibfd-1"};
}

}  // namespace mddsim
