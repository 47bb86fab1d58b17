/**
 * @file rng.hpp
 * @brief Deterministic random streams for reproducible Monte Carlo runs.
 *
 * Every trial draws from its own substream derived from (master seed, trial
 * index), so results do not depend on scheduling order or thread count.
 * Gaussian variates use an explicit Box-Muller transform on top of
 * std::mt19937_64 instead of std::normal_distribution: the distribution
 * adapters in the standard library are implementation-defined, and the
 * simulator guarantees byte-identical output for a given seed.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace mddsim {

// One step of the splitmix64 generator; used only to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Substream for one Monte Carlo trial. Mixing through splitmix64 keeps the
  // streams decorrelated even for adjacent trial indices. The lane separates
  // purposes within a trial (channel / noise / payload), so the channel
  // realization of a trial is identical for every scheme and velocity and
  // comparisons between them are paired.
  static RandomStream for_trial(std::uint64_t master_seed, std::uint64_t trial,
                                std::uint64_t lane = 0) {
    std::uint64_t state = master_seed ^ (0x632be59bd9b4e019ULL * (trial + 1)) ^
                          (0xd1342543de82ef95ULL * (lane + 1));
    std::uint64_t seed = splitmix64(state);
    seed ^= splitmix64(state) << 1;
    return RandomStream(seed);
  }

  // U(0,1]; never returns 0 so log() in Box-Muller is safe.
  double uniform() {
    return 1.0 - (engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // N(0,1). Consumes exactly two engine draws (no cached spare).
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // CN(0, variance): two independent real normals scaled by sqrt(variance/2).
  std::complex<double> cgaussian(double variance) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-variance * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  // Uniform draw from the unit-energy 16-QAM constellation.
  std::complex<double> qam16() {
    static constexpr double kLevel[4] = {-3.0, -1.0, 1.0, 3.0};
    const std::uint64_t idx = engine_() & 15u;  // 2^64 is divisible by 16: no bias
    const double scale = 1.0 / std::sqrt(10.0);
    return {kLevel[idx & 3u] * scale, kLevel[(idx >> 2) & 3u] * scale};
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mddsim
