#pragma once
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hem3d/archmodel.hpp"

namespace hem3d {

// Time-windowed communication profile: f[t](i,j) messages per cycle,
// directed i -> j, sparse (missing pairs are zero).
struct TrafficProfile {
  int windows = 0;
  int tiles = 0;
  std::vector<std::map<std::pair<int, int>, double>> freq;  // per window

  double at(int window, int i, int j) const;
  void check() const;  // throws std::invalid_argument on invariant breaks

  bool operator==(const TrafficProfile&) const = default;
};

// Per-tile power trace in watts, same window count as the paired traffic.
struct PowerProfile {
  int windows = 0;
  std::vector<std::vector<double>> watts;  // [window][tile]

  void check(int tiles) const;

  bool operator==(const PowerProfile&) const = default;
};

// Synthetic many-to-few-to-many generator constants. Every flow has an LLC
// as exactly one endpoint. Per window t with scale w_t in [1-skew, 1+skew]:
//   core s sends rate_s = intensity * w_t * (1.5 if GPU else 1.0), split
//   80% to its home LLC (id order, s mod M) and 20% uniformly over all LLCs;
//   each LLC responds with 0.5x the request flow.
// Window aggregate: 1.5 * intensity * w_t * (n_cpu + 1.5 * n_gpu).
inline constexpr double kSynthGpuRateWeight = 1.5;
inline constexpr double kSynthHomeShare = 0.8;
inline constexpr double kSynthResponseRatio = 0.5;
inline constexpr double kSynthPowerGpuW = 2.5;
inline constexpr double kSynthPowerCpuW = 1.5;
inline constexpr double kSynthPowerLlcW = 0.8;

double synth_window_aggregate(const Design& design, double intensity,
                              double window_scale);

std::pair<TrafficProfile, PowerProfile> synth_many_to_few(
    const Design& design, int windows, double intensity, double skew,
    std::uint64_t seed);

// Arithmetic mean over windows; throws on an empty list.
double window_average(std::span<const double> values);

}  // namespace hem3d
