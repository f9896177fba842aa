#include "hem3d/traffic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hem3d {

double TrafficProfile::at(int window, int i, int j) const {
  const auto& m = freq.at(window);
  auto it = m.find({i, j});
  return it == m.end() ? 0.0 : it->second;
}

void TrafficProfile::check() const {
  if (windows < 1) throw std::invalid_argument("traffic needs >= 1 window");
  if (static_cast<int>(freq.size()) != windows)
    throw std::invalid_argument("traffic window count mismatch");
  for (int t = 0; t < windows; ++t) {
    for (const auto& [pair, f] : freq[t]) {
      auto [i, j] = pair;
      if (i < 0 || j < 0 || i >= tiles || j >= tiles)
        throw std::invalid_argument("traffic entry references unknown tile");
      if (i == j)
        throw std::invalid_argument("traffic diagonal entry f[" +
                                    std::to_string(t) + "][" +
                                    std::to_string(i) + "][" +
                                    std::to_string(i) + "] must be zero");
      if (!std::isfinite(f) || f < 0.0)
        throw std::invalid_argument("traffic entries must be finite and >= 0");
    }
  }
}

void PowerProfile::check(int tiles) const {
  if (windows < 1) throw std::invalid_argument("power needs >= 1 window");
  if (static_cast<int>(watts.size()) != windows)
    throw std::invalid_argument("power window count mismatch");
  for (const auto& w : watts) {
    if (static_cast<int>(w.size()) != tiles)
      throw std::invalid_argument("power row length != tile count");
    for (double p : w)
      if (!std::isfinite(p) || p < 0.0)
        throw std::invalid_argument("power entries must be finite and >= 0");
  }
}

double synth_window_aggregate(const Design& design, double intensity,
                              double window_scale) {
  int cpus = 0, gpus = 0;
  for (TileKind k : design.kinds) {
    if (k == TileKind::Cpu) ++cpus;
    if (k == TileKind::Gpu) ++gpus;
  }
  return (1.0 + kSynthResponseRatio) * intensity * window_scale *
         (cpus + kSynthGpuRateWeight * gpus);
}

std::pair<TrafficProfile, PowerProfile> synth_many_to_few(
    const Design& design, int windows, double intensity, double skew,
    std::uint64_t seed) {
  if (windows < 1) throw std::invalid_argument("windows must be >= 1");
  if (!(intensity > 0.0)) throw std::invalid_argument("intensity must be > 0");
  if (skew < 0.0 || skew > 1.0)
    throw std::invalid_argument("skew must be in [0, 1]");

  const int tiles = design.tile_count();
  std::vector<int> llcs, cores;
  for (int t = 0; t < tiles; ++t) {
    if (design.kinds[t] == TileKind::Llc)
      llcs.push_back(t);
    else
      cores.push_back(t);
  }
  if (llcs.empty())
    throw std::invalid_argument("many-to-few traffic needs >= 1 LLC");
  const int m = static_cast<int>(llcs.size());

  Rng rng(seed);
  TrafficProfile traffic;
  traffic.windows = windows;
  traffic.tiles = tiles;
  traffic.freq.resize(windows);
  PowerProfile power;
  power.windows = windows;
  power.watts.assign(windows, std::vector<double>(tiles, 0.0));

  for (int t = 0; t < windows; ++t) {
    const double wt = 1.0 + skew * rng.uniform(-1.0, 1.0);
    auto& f = traffic.freq[t];
    for (int s : cores) {
      const double rate =
          intensity * wt *
          (design.kinds[s] == TileKind::Gpu ? kSynthGpuRateWeight : 1.0);
      const int home = llcs[s % m];
      f[{s, home}] += kSynthHomeShare * rate;
      for (int l : llcs) f[{s, l}] += (1.0 - kSynthHomeShare) * rate / m;
    }
    // LLC -> core responses, proportional to request volume.
    std::map<std::pair<int, int>, double> responses;
    for (const auto& [pair, v] : f)
      responses[{pair.second, pair.first}] = kSynthResponseRatio * v;
    for (const auto& [pair, v] : responses) f[pair] = v;

    for (int i = 0; i < tiles; ++i) {
      double base = kSynthPowerLlcW;
      if (design.kinds[i] == TileKind::Cpu) base = kSynthPowerCpuW;
      if (design.kinds[i] == TileKind::Gpu) base = kSynthPowerGpuW;
      power.watts[t][i] = base * (1.0 + skew * rng.uniform(-1.0, 1.0));
    }
  }

  traffic.check();
  power.check(tiles);
  return {std::move(traffic), std::move(power)};
}

double window_average(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("window_average of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace hem3d
