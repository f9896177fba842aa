#include "hem3d/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace hem3d {

std::vector<int> RoutingTable::path(int i, int j) const {
  if (i == j) return {i};
  if (i < j) return fwd_paths[i * tiles + j];
  std::vector<int> p = fwd_paths[j * tiles + i];
  std::reverse(p.begin(), p.end());
  return p;
}

RoutingTable compute_routes(const Design& design, const Technology& tech) {
  const int n = design.tile_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : design.links) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  RoutingTable table;
  table.tiles = n;
  table.hops.assign(static_cast<std::size_t>(n) * n, -1);
  table.dist_mm.assign(static_cast<std::size_t>(n) * n, 0.0);
  table.fwd_paths.resize(static_cast<std::size_t>(n) * n);

  // Cache link lengths once; path lengths are sums of these.
  std::vector<std::vector<double>> len(n);
  for (int v = 0; v < n; ++v) {
    len[v].reserve(adj[v].size());
    for (int w : adj[v]) len[v].push_back(link_length_mm(design, tech, v, w));
  }

  std::vector<int> level(n), order(n), parent(n), rank(n);
  std::vector<double> dist_to(n);

  for (int src = 0; src < n; ++src) {
    // BFS levels.
    std::fill(level.begin(), level.end(), -1);
    level[src] = 0;
    int head = 0, tail = 0;
    order[tail++] = src;
    while (head < tail) {
      int v = order[head++];
      for (int w : adj[v])
        if (level[w] < 0) {
          level[w] = level[v] + 1;
          order[tail++] = w;
        }
    }
    if (tail != n)
      throw std::invalid_argument("compute_routes on a disconnected design");

    // Hop-minimal paths only step from level l to l+1. Within the BFS DAG
    // pick the distance-minimal parent; ties resolved by the lexicographic
    // rank of the parent's own path.
    dist_to[src] = 0.0;
    parent[src] = -1;
    rank[src] = 0;
    int pos = 1;
    while (pos < n) {
      int end = pos;
      const int lvl = level[order[pos]];
      while (end < n && level[order[end]] == lvl) ++end;
      for (int idx = pos; idx < end; ++idx) {
        const int v = order[idx];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < adj[v].size(); ++k) {
          int u = adj[v][k];
          if (level[u] != lvl - 1) continue;
          best = std::min(best, dist_to[u] + len[v][k]);
        }
        const double tol = 1e-9 * std::max(1.0, best);
        int best_parent = -1;
        for (std::size_t k = 0; k < adj[v].size(); ++k) {
          int u = adj[v][k];
          if (level[u] != lvl - 1) continue;
          if (dist_to[u] + len[v][k] <= best + tol &&
              (best_parent < 0 || rank[u] < rank[best_parent]))
            best_parent = u;
        }
        dist_to[v] = best;
        parent[v] = best_parent;
      }
      // Re-rank this level: compare (parent path rank, own id).
      std::sort(order.begin() + pos, order.begin() + end, [&](int a, int b) {
        if (rank[parent[a]] != rank[parent[b]])
          return rank[parent[a]] < rank[parent[b]];
        return a < b;
      });
      for (int idx = pos; idx < end; ++idx) rank[order[idx]] = idx - pos;
      pos = end;
    }

    for (int dst = 0; dst < n; ++dst) {
      table.hops[src * n + dst] = level[dst];
      table.hops[dst * n + src] = level[dst];
      if (dst <= src) continue;
      table.dist_mm[src * n + dst] = dist_to[dst];
      table.dist_mm[dst * n + src] = dist_to[dst];
      std::vector<int>& p = table.fwd_paths[src * n + dst];
      p.clear();
      for (int v = dst; v >= 0; v = parent[v]) p.push_back(v);
      std::reverse(p.begin(), p.end());
    }
  }
  return table;
}

double link_delay(const Technology& tech, int i, int j,
                  const RoutingTable& table) {
  if (i < 0 || j < 0 || i >= table.tiles || j >= table.tiles)
    throw std::out_of_range("link_delay: unknown tile id");
  return table.dist(i, j) * tech.link_delay_per_mm;
}

void dump_routes_csv(std::ostream& out, const RoutingTable& table) {
  out << "src,dst,hops,dist_mm,path\n";
  for (int i = 0; i < table.tiles; ++i) {
    for (int j = 0; j < table.tiles; ++j) {
      if (i == j) continue;
      out << i << ',' << j << ',' << table.h(i, j) << ',' << table.dist(i, j)
          << ',';
      auto p = table.path(i, j);
      for (std::size_t k = 0; k < p.size(); ++k)
        out << (k ? "-" : "") << p[k];
      out << '\n';
    }
  }
}

}  // namespace hem3d
