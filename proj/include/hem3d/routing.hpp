#pragma once
#include <ostream>
#include <vector>

#include "hem3d/archmodel.hpp"

namespace hem3d {

// Deterministic single-path routes for every ordered tile pair.
// Route choice: minimal hop count, then minimal total Euclidean length,
// then lexicographically smallest vertex sequence (applied to the canonical
// direction i < j; the reverse pair uses the reversed path).
struct RoutingTable {
  int tiles = 0;
  std::vector<int> hops;        // tiles*tiles, h[i][j]
  std::vector<double> dist_mm;  // tiles*tiles, sum of traversed link lengths
  // Vertex sequences (including endpoints) stored for i < j only.
  std::vector<std::vector<int>> fwd_paths;

  int h(int i, int j) const { return hops[i * tiles + j]; }
  double dist(int i, int j) const { return dist_mm[i * tiles + j]; }
  // Path from i to j as a vertex sequence; reversed on demand for i > j.
  std::vector<int> path(int i, int j) const;

  // Iterate path links without materializing the reversed sequence.
  template <class Fn>  // Fn(int a, int b) per traversed link
  void for_each_link(int i, int j, Fn&& fn) const {
    if (i == j) return;
    const auto& p = fwd_paths[(i < j ? i : j) * tiles + (i < j ? j : i)];
    for (std::size_t k = 0; k + 1 < p.size(); ++k) fn(p[k], p[k + 1]);
  }
};

// Throws std::invalid_argument when the design's link graph is disconnected
// (callers must validate first).
RoutingTable compute_routes(const Design& design, const Technology& tech);

// d_ij = dist[i][j] * tech.link_delay_per_mm, in cycles.
double link_delay(const Technology& tech, int i, int j,
                  const RoutingTable& table);

// Debug dump: src, dst, hops, dist_mm, path="a-b-c".
void dump_routes_csv(std::ostream& out, const RoutingTable& table);

}  // namespace hem3d
