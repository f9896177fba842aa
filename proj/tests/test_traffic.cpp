#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "hem3d/traffic.hpp"
#include "support.hpp"

using namespace hem3d;
using namespace testsupport;

namespace {

double window_sum(const TrafficProfile& p, int t) {
  double s = 0.0;
  for (const auto& [pair, f] : p.freq[t]) s += f;
  return s;
}

}  // namespace

TEST_CASE("window aggregate stays within the skew envelope") {
  const Design d = toy8();  // 1 cpu, 1 llc, 6 gpu
  const double intensity = 0.1;
  const double skew = 0.1;
  const auto [traffic, power] = synth_many_to_few(d, 4, intensity, skew, 11);
  const double nominal = synth_window_aggregate(d, intensity, 1.0);
  CHECK(nominal ==
        doctest::Approx(1.5 * intensity * (1 + 1.5 * 6)).epsilon(1e-12));
  for (int t = 0; t < traffic.windows; ++t) {
    const double s = window_sum(traffic, t);
    CHECK(s >= (1.0 - skew) * nominal - 1e-12);
    CHECK(s <= (1.0 + skew) * nominal + 1e-12);
  }
}

TEST_CASE("every flow has exactly one LLC endpoint") {
  const Design d = build_hem3d_default(tsv_preset(), 3);
  const auto [traffic, power] = synth_many_to_few(d, 3, 0.2, 0.3, 5);
  for (int t = 0; t < traffic.windows; ++t) {
    for (const auto& [pair, f] : traffic.freq[t]) {
      const bool src_llc = d.kinds[pair.first] == TileKind::Llc;
      const bool dst_llc = d.kinds[pair.second] == TileKind::Llc;
      CHECK(src_llc != dst_llc);
      CHECK(f > 0.0);
    }
  }
}

TEST_CASE("LLC responses are half the request volume") {
  const Design d = toy8();
  const auto [traffic, power] = synth_many_to_few(d, 2, 0.1, 0.2, 9);
  for (int t = 0; t < traffic.windows; ++t) {
    for (const auto& [pair, f] : traffic.freq[t]) {
      if (d.kinds[pair.first] != TileKind::Llc) continue;
      const double request = traffic.at(t, pair.second, pair.first);
      CHECK(f == doctest::Approx(kSynthResponseRatio * request).epsilon(1e-12));
    }
  }
}

TEST_CASE("home LLC receives the dominant share") {
  const Design d = build_hem3d_default(tsv_preset(), 4);
  std::vector<int> llcs;
  for (int t = 0; t < d.tile_count(); ++t)
    if (d.kinds[t] == TileKind::Llc) llcs.push_back(t);
  const int m = static_cast<int>(llcs.size());
  const auto [traffic, power] = synth_many_to_few(d, 1, 0.1, 0.0, 2);
  for (int s = 0; s < d.tile_count(); ++s) {
    if (d.kinds[s] == TileKind::Llc) continue;
    const int home = llcs[s % m];
    const double rate = 0.1 * (d.kinds[s] == TileKind::Gpu ? 1.5 : 1.0);
    CHECK(traffic.at(0, s, home) ==
          doctest::Approx(0.8 * rate + 0.2 * rate / m).epsilon(1e-12));
    for (int l : llcs) {
      if (l == home) continue;
      CHECK(traffic.at(0, s, l) == doctest::Approx(0.2 * rate / m).epsilon(1e-12));
    }
  }
}

TEST_CASE("power levels follow tile kind") {
  const Design d = toy8();
  const auto [traffic, power] = synth_many_to_few(d, 1, 0.1, 0.0, 1);
  for (int i = 0; i < d.tile_count(); ++i) {
    double expected = kSynthPowerGpuW;
    if (d.kinds[i] == TileKind::Cpu) expected = kSynthPowerCpuW;
    if (d.kinds[i] == TileKind::Llc) expected = kSynthPowerLlcW;
    CHECK(power.watts[0][i] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("generator is deterministic per seed") {
  const Design d = toy8();
  const auto a = synth_many_to_few(d, 3, 0.1, 0.2, 42);
  const auto b = synth_many_to_few(d, 3, 0.1, 0.2, 42);
  const auto c = synth_many_to_few(d, 3, 0.1, 0.2, 43);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(a.first != c.first);
}

TEST_CASE("window_average basics") {
  const std::array<double, 3> v{1.0, 2.0, 6.0};
  CHECK(window_average(v) == doctest::Approx(3.0));
  CHECK_THROWS_AS(window_average(std::span<const double>{}),
                  std::invalid_argument);
}

TEST_CASE("profile validation rejects bad entries") {
  TrafficProfile p;
  p.windows = 1;
  p.tiles = 2;
  p.freq.resize(1);
  p.freq[0][{0, 0}] = 1.0;  // diagonal
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p.freq[0].clear();
  p.freq[0][{0, 5}] = 1.0;  // unknown tile
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  p.freq[0].clear();
  p.freq[0][{0, 1}] = -1.0;  // negative
  CHECK_THROWS_AS(p.check(), std::invalid_argument);
  CHECK_THROWS_AS(synth_many_to_few(toy8(), 0, 0.1, 0.1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(synth_many_to_few(toy8(), 1, 0.1, 2.0, 1),
                  std::invalid_argument);
}
