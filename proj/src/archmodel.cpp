#include "hem3d/archmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hem3d {

const char* to_string(TileKind kind) {
  switch (kind) {
    case TileKind::Cpu: return "cpu";
    case TileKind::Gpu: return "gpu";
    case TileKind::Llc: return "llc";
  }
  return "?";
}

TileKind tile_kind_from_string(std::string_view s) {
  if (s == "cpu") return TileKind::Cpu;
  if (s == "gpu") return TileKind::Gpu;
  if (s == "llc") return TileKind::Llc;
  throw std::invalid_argument("unknown tile kind: " + std::string(s));
}

void GridSpec::check() const {
  if (tiers < 1 || rows < 1 || cols < 1)
    throw std::invalid_argument("grid dimensions must be >= 1");
  if (!(tier_pitch_mm > 0.0) || !(cell_pitch_mm > 0.0))
    throw std::invalid_argument("grid pitches must be positive");
}

void Technology::check() const {
  if (name != "m3d" && name != "tsv")
    throw std::invalid_argument("technology name must be m3d or tsv");
  if (r_tier.empty()) throw std::invalid_argument("r_tier must be non-empty");
  for (double r : r_tier)
    if (!(r > 0.0)) throw std::invalid_argument("r_tier entries must be positive");
  if (!(r_base > 0.0)) throw std::invalid_argument("r_base must be positive");
  if (!(lateral_factor > 0.0))
    throw std::invalid_argument("lateral_factor must be positive");
  if (!(link_delay_per_mm > 0.0))
    throw std::invalid_argument("link_delay_per_mm must be positive");
  if (router_stages < 1)
    throw std::invalid_argument("router_stages must be >= 1");
  if (!(cpu_freq_ghz > 0.0) || !(gpu_freq_ghz > 0.0))
    throw std::invalid_argument("frequencies must be positive");
  if (!(llc_latency_scale > 0.0) || llc_latency_scale > 1.0)
    throw std::invalid_argument("llc_latency_scale must be in (0, 1]");
  if (!(power_scale > 0.0) || power_scale > 1.0)
    throw std::invalid_argument("power_scale must be in (0, 1]");
  if (!(tile_footprint_scale > 0.0) || tile_footprint_scale > 1.0)
    throw std::invalid_argument("tile_footprint_scale must be in (0, 1]");
}

Technology tsv_preset() {
  Technology t;
  t.name = "tsv";
  t.r_tier = {0.8, 0.8, 0.8, 0.8};
  t.r_base = 2.0;
  t.lateral_factor = 1.0;
  t.link_delay_per_mm = 0.5;
  t.router_stages = 3;
  t.cpu_freq_ghz = 2.0;
  t.gpu_freq_ghz = 0.7;
  t.llc_latency_scale = 1.0;
  t.power_scale = 1.0;
  t.tile_footprint_scale = 1.0;
  return t;
}

Technology m3d_preset() {
  Technology t;
  t.name = "m3d";
  t.r_tier = {0.12, 0.12, 0.12, 0.12};
  t.r_base = 1.2;
  t.lateral_factor = 1.0;
  t.link_delay_per_mm = 0.5;
  t.router_stages = 3;
  t.cpu_freq_ghz = 2.28;
  t.gpu_freq_ghz = 0.77;
  t.llc_latency_scale = 0.767;  // 23.3% lower LLC access latency
  t.power_scale = 0.85;
  t.tile_footprint_scale = 1.0 / std::sqrt(2.0);
  return t;
}

double default_tier_pitch_mm(const Technology& tech) {
  return tech.name == "m3d" ? 0.001 : 0.05;
}

int Design::degree(int tile) const {
  int d = 0;
  for (const auto& [a, b] : links)
    if (a == tile || b == tile) ++d;
  return d;
}

bool Design::has_link(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(links.begin(), links.end(), std::make_pair(a, b));
}

void Design::rebuild_slot_index() {
  slot_of.assign(tile_at.size(), -1);
  for (int s = 0; s < static_cast<int>(tile_at.size()); ++s) {
    int t = tile_at[s];
    if (t >= 0 && t < static_cast<int>(slot_of.size())) slot_of[t] = s;
  }
}

void Design::sort_links() {
  for (auto& [a, b] : links)
    if (a > b) std::swap(a, b);
  std::sort(links.begin(), links.end());
}

namespace {

bool connected(int tiles, const std::vector<std::pair<int, int>>& links) {
  if (tiles <= 1) return true;
  std::vector<std::vector<int>> adj(tiles);
  for (const auto& [a, b] : links) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(tiles, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == tiles;
}

}  // namespace

std::optional<Violation> validate(const Design& design, int max_degree) {
  const int slots = design.grid.slot_count();
  const int tiles = design.tile_count();
  try {
    design.grid.check();
  } catch (const std::exception& e) {
    return Violation{"shape", e.what()};
  }
  if (static_cast<int>(design.tile_at.size()) != slots || tiles != slots)
    return Violation{"shape", "tile/slot counts do not match the grid"};

  std::vector<char> seen(tiles, 0);
  for (int s = 0; s < slots; ++s) {
    int t = design.tile_at[s];
    if (t < 0 || t >= tiles || seen[t])
      return Violation{"bijection", "placement is not a slot<->tile bijection"};
    seen[t] = 1;
  }
  if (static_cast<int>(design.slot_of.size()) != tiles)
    return Violation{"bijection", "slot index not built"};
  for (int t = 0; t < tiles; ++t)
    if (design.slot_of[t] < 0 || design.slot_of[t] >= slots ||
        design.tile_at[design.slot_of[t]] != t)
      return Violation{"bijection", "slot_of inconsistent with tile_at"};

  for (std::size_t i = 0; i < design.links.size(); ++i) {
    auto [a, b] = design.links[i];
    if (a == b)
      return Violation{"self_loop",
                       "link " + std::to_string(a) + "-" + std::to_string(b)};
    if (a < 0 || b < 0 || a >= tiles || b >= tiles || a > b)
      return Violation{"shape", "link endpoint out of range or not canonical"};
    if (i > 0 && design.links[i] == design.links[i - 1])
      return Violation{"duplicate_link",
                       "link " + std::to_string(a) + "-" + std::to_string(b)};
  }

  std::vector<int> deg(tiles, 0);
  for (const auto& [a, b] : design.links) {
    ++deg[a];
    ++deg[b];
  }
  for (int t = 0; t < tiles; ++t)
    if (deg[t] > max_degree)
      return Violation{"degree", "tile " + std::to_string(t) + " has degree " +
                                     std::to_string(deg[t])};

  if (!connected(tiles, design.links))
    return Violation{"connectivity", "link graph is not connected"};

  return std::nullopt;
}

std::array<double, 3> coordinates(const Design& design, const Technology& tech,
                                  int tile) {
  if (tile < 0 || tile >= design.tile_count())
    throw std::out_of_range("unknown tile id " + std::to_string(tile));
  auto [tier, row, col] = design.grid.slot_coords(design.slot_of[tile]);
  const double planar = design.grid.cell_pitch_mm * tech.tile_footprint_scale;
  return {col * planar, row * planar, tier * design.grid.tier_pitch_mm};
}

double slot_distance_mm(const GridSpec& grid, const Technology& tech,
                        int slot_a, int slot_b) {
  auto [ta, ra, ca] = grid.slot_coords(slot_a);
  auto [tb, rb, cb] = grid.slot_coords(slot_b);
  const double planar = grid.cell_pitch_mm * tech.tile_footprint_scale;
  const double dx = (ca - cb) * planar;
  const double dy = (ra - rb) * planar;
  const double dz = (ta - tb) * grid.tier_pitch_mm;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double link_length_mm(const Design& design, const Technology& tech, int a,
                      int b) {
  return slot_distance_mm(design.grid, tech, design.slot_of[a],
                          design.slot_of[b]);
}

namespace {

// Distances are clamped below before weighting so that near-coincident M3D
// tiers do not collapse all probability mass onto vertical pairs.
constexpr double kMinWeightDistMm = 0.01;

}  // namespace

Design build_design(const GridSpec& grid, const TileMix& mix,
                    const Technology& tech, std::uint64_t seed,
                    const BuildOptions& opts) {
  grid.check();
  tech.check();
  const int n = grid.slot_count();
  if (mix.total() != n)
    throw std::invalid_argument("tile mix (" + std::to_string(mix.total()) +
                                ") does not fill the grid (" +
                                std::to_string(n) + " slots)");
  const int link_count = opts.link_count.value_or(grid.mesh_link_count());
  const long long max_pairs = static_cast<long long>(n) * (n - 1) / 2;
  if (link_count < n - 1 || link_count > max_pairs)
    throw std::invalid_argument("link count infeasible for " +
                                std::to_string(n) + " tiles");

  Rng rng(seed);

  Design d;
  d.grid = grid;
  d.tile_at.resize(n);
  std::iota(d.tile_at.begin(), d.tile_at.end(), 0);
  d.kinds.reserve(n);
  for (int i = 0; i < mix.cpu; ++i) d.kinds.push_back(TileKind::Cpu);
  for (int i = 0; i < mix.llc; ++i) d.kinds.push_back(TileKind::Llc);
  for (int i = 0; i < mix.gpu; ++i) d.kinds.push_back(TileKind::Gpu);
  rng.shuffle(d.kinds);
  d.rebuild_slot_index();

  // Candidate link weights: dist^-alpha over physical slot coordinates.
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> cumulative;
  pairs.reserve(static_cast<std::size_t>(max_pairs));
  cumulative.reserve(static_cast<std::size_t>(max_pairs));
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      double dist =
          std::max(slot_distance_mm(grid, tech, a, b), kMinWeightDistMm);
      total += std::pow(dist, -opts.alpha);
      pairs.emplace_back(a, b);
      cumulative.push_back(total);
    }
  }

  const long long draw_budget = 400LL * link_count + 1000;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<char> chosen(pairs.size(), 0);
    std::vector<int> deg(n, 0);
    std::vector<std::pair<int, int>> links;
    links.reserve(link_count);
    for (long long draw = 0;
         draw < draw_budget && static_cast<int>(links.size()) < link_count;
         ++draw) {
      double r = rng.uniform() * total;
      std::size_t idx =
          std::lower_bound(cumulative.begin(), cumulative.end(), r) -
          cumulative.begin();
      if (idx >= pairs.size()) idx = pairs.size() - 1;
      auto [a, b] = pairs[idx];
      if (chosen[idx] || deg[a] >= opts.max_degree || deg[b] >= opts.max_degree)
        continue;
      chosen[idx] = 1;
      ++deg[a];
      ++deg[b];
      links.push_back(pairs[idx]);
    }
    if (static_cast<int>(links.size()) != link_count) continue;
    if (!connected(n, links)) continue;
    d.links = std::move(links);
    d.sort_links();
    return d;
  }
  throw std::runtime_error("small-world link sampling failed after " +
                           std::to_string(opts.max_attempts) + " attempts");
}

Design build_hem3d_default(const Technology& tech, std::uint64_t seed) {
  GridSpec grid;
  grid.tiers = 4;
  grid.rows = 4;
  grid.cols = 4;
  grid.tier_pitch_mm = default_tier_pitch_mm(tech);
  grid.cell_pitch_mm = 2.0;
  return build_design(grid, TileMix{8, 16, 40}, tech, seed);
}

}  // namespace hem3d
