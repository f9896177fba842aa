// Shared helpers and independent oracles for the test suite.
#pragma once
#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "hem3d/archmodel.hpp"
#include "hem3d/rng.hpp"

namespace testsupport {

using namespace hem3d;

// All edges of the full 3D mesh on a grid (slot = tile id identity).
inline std::vector<std::pair<int, int>> mesh_links(const GridSpec& grid) {
  std::vector<std::pair<int, int>> links;
  for (int t = 0; t < grid.tiers; ++t) {
    for (int r = 0; r < grid.rows; ++r) {
      for (int c = 0; c < grid.cols; ++c) {
        const int s = grid.slot_index(t, r, c);
        if (c + 1 < grid.cols) links.emplace_back(s, grid.slot_index(t, r, c + 1));
        if (r + 1 < grid.rows) links.emplace_back(s, grid.slot_index(t, r + 1, c));
        if (t + 1 < grid.tiers) links.emplace_back(s, grid.slot_index(t + 1, r, c));
      }
    }
  }
  for (auto& [a, b] : links)
    if (a > b) std::swap(a, b);
  std::sort(links.begin(), links.end());
  return links;
}

// Identity placement (tile i on slot i) with the given per-slot kinds and the
// full mesh link set.
inline Design mesh_design(const GridSpec& grid, std::vector<TileKind> kinds) {
  Design d;
  d.grid = grid;
  d.kinds = std::move(kinds);
  d.tile_at.resize(grid.slot_count());
  for (int s = 0; s < grid.slot_count(); ++s) d.tile_at[s] = s;
  d.rebuild_slot_index();
  d.links = mesh_links(grid);
  return d;
}

// Three tiles in a row: cpu(0) - gpu(1) - llc(2), chained links.
inline Design line3(double cell_pitch_mm) {
  GridSpec grid;
  grid.tiers = 1;
  grid.rows = 1;
  grid.cols = 3;
  grid.cell_pitch_mm = cell_pitch_mm;
  grid.tier_pitch_mm = 0.05;
  Design d = mesh_design(grid, {TileKind::Cpu, TileKind::Gpu, TileKind::Llc});
  return d;
}

// 2x2x2 toy: 1 CPU / 1 LLC / 6 GPU on the full mesh (12 links).
inline Design toy8() {
  GridSpec grid;
  grid.tiers = 2;
  grid.rows = 2;
  grid.cols = 2;
  grid.cell_pitch_mm = 2.0;
  grid.tier_pitch_mm = 0.05;
  std::vector<TileKind> kinds(8, TileKind::Gpu);
  kinds[0] = TileKind::Cpu;
  kinds[1] = TileKind::Llc;
  return mesh_design(grid, kinds);
}

// Neutral technology for hand fixtures (TSV-shaped, values overridden by
// individual tests as needed).
inline Technology plain_tech() {
  Technology t = tsv_preset();
  return t;
}

// Breadth-first-search hop oracle, independent of the routing module.
inline std::vector<int> bfs_hops(const Design& d, int src) {
  std::vector<std::vector<int>> adj(d.tile_count());
  for (const auto& [a, b] : d.links) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> dist(d.tile_count(), -1);
  std::vector<int> queue{src};
  dist[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool dominates_min(const std::vector<double>& a,
                          const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] > b[c]) return false;
    if (a[c] < b[c]) strict = true;
  }
  return strict;
}

// O(n^2) non-dominated filter oracle (deduplicates exact ties).
inline std::vector<std::vector<double>> pareto_filter(
    std::vector<std::vector<double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::vector<double>> front;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
      if (j != i && dominates_min(pts[j], pts[i])) dominated = true;
    if (!dominated) front.push_back(pts[i]);
  }
  return front;
}

// Monte-Carlo hypervolume estimate (minimization, bounded by ref).
inline double mc_hypervolume(const std::vector<std::vector<double>>& pts,
                             const std::vector<double>& ref, long long samples,
                             std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t dims = ref.size();
  long long hits = 0;
  std::vector<double> x(dims);
  for (long long s = 0; s < samples; ++s) {
    for (std::size_t c = 0; c < dims; ++c) x[c] = rng.uniform(0.0, ref[c]);
    for (const auto& p : pts) {
      bool covers = true;
      for (std::size_t c = 0; c < dims; ++c) {
        if (p[c] > x[c]) {
          covers = false;
          break;
        }
      }
      if (covers) {
        ++hits;
        break;
      }
    }
  }
  double box = 1.0;
  for (double r : ref) box *= r;
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

// Random front of up to max_points vectors in [0.05, 0.9] per coordinate.
// The first point is pinned at 0.3 everywhere so the dominated volume stays
// large enough for tight Monte-Carlo comparisons.
inline std::vector<std::vector<double>> random_points(std::size_t dims,
                                                      int max_points,
                                                      Rng& rng) {
  const int n = 1 + static_cast<int>(rng.below(max_points));
  std::vector<std::vector<double>> pts{std::vector<double>(dims, 0.3)};
  for (int i = 1; i < n; ++i) {
    std::vector<double> p(dims);
    for (std::size_t c = 0; c < dims; ++c) p[c] = rng.uniform(0.05, 0.9);
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace testsupport
