#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hem3d/rng.hpp"

namespace hem3d {

enum class TileKind { Cpu, Gpu, Llc };

const char* to_string(TileKind kind);
TileKind tile_kind_from_string(std::string_view s);

// 3D grid of tile slots: `tiers` stacked layers of rows x cols.
struct GridSpec {
  int tiers = 4;
  int rows = 4;
  int cols = 4;
  double tier_pitch_mm = 0.05;  // vertical distance between adjacent tiers
  double cell_pitch_mm = 2.0;   // planar tile pitch

  int slot_count() const { return tiers * rows * cols; }

  // Slots are enumerated tier-major, then row, then col.
  int slot_index(int tier, int row, int col) const {
    return (tier * rows + row) * cols + col;
  }
  std::array<int, 3> slot_coords(int slot) const {
    return {slot / (rows * cols), (slot / cols) % rows, slot % cols};
  }

  // Edge count of the full 3D mesh on this grid.
  int mesh_link_count() const {
    return tiers * rows * (cols - 1) + tiers * (rows - 1) * cols +
           (tiers - 1) * rows * cols;
  }

  void check() const;  // throws std::invalid_argument

  bool operator==(const GridSpec&) const = default;
};

// Physical parameters that differ between M3D and TSV integration.
struct Technology {
  std::string name;             // "m3d" or "tsv"
  std::vector<double> r_tier;   // vertical thermal resistance per tier, K/W,
                                // sink side first; length >= design tiers
  double r_base = 0.0;          // base-layer thermal resistance, K/W
  double lateral_factor = 1.0;  // lateral heat-flow multiplier
  double link_delay_per_mm = 0.5;  // cycles per mm at the NoC clock
  int router_stages = 3;
  double cpu_freq_ghz = 2.0;
  double gpu_freq_ghz = 0.7;
  double llc_latency_scale = 1.0;    // (0, 1]
  double power_scale = 1.0;          // (0, 1]
  double tile_footprint_scale = 1.0; // planar dimension multiplier, (0, 1]

  void check() const;  // throws std::invalid_argument

  bool operator==(const Technology&) const = default;
};

Technology m3d_preset();
Technology tsv_preset();
double default_tier_pitch_mm(const Technology& tech);

struct TileMix {
  int cpu = 0;
  int llc = 0;
  int gpu = 0;
  int total() const { return cpu + llc + gpu; }
};

// A candidate architecture: tile placement on the grid plus NoC links.
// Links connect tile ids; each pair is stored with first < second and the
// list kept sorted.
struct Design {
  GridSpec grid;
  std::vector<int> tile_at;   // slot index -> tile id
  std::vector<int> slot_of;   // tile id -> slot index (inverse of tile_at)
  std::vector<TileKind> kinds;  // tile id -> kind
  std::vector<std::pair<int, int>> links;

  int tile_count() const { return static_cast<int>(kinds.size()); }
  int link_count() const { return static_cast<int>(links.size()); }
  int degree(int tile) const;
  bool has_link(int a, int b) const;

  void rebuild_slot_index();
  void sort_links();

  bool operator==(const Design&) const = default;
};

struct Violation {
  std::string rule;    // "shape" | "bijection" | "self_loop" |
                       // "duplicate_link" | "degree" | "connectivity"
  std::string detail;
};

// Returns the first violated invariant, or nullopt when the design is valid.
std::optional<Violation> validate(const Design& design, int max_degree = 7);

// Physical position of a tile in mm: planar coordinates scale with the
// technology footprint, vertical with the grid tier pitch.
std::array<double, 3> coordinates(const Design& design, const Technology& tech,
                                  int tile);

double slot_distance_mm(const GridSpec& grid, const Technology& tech,
                        int slot_a, int slot_b);
double link_length_mm(const Design& design, const Technology& tech, int a,
                      int b);

struct BuildOptions {
  double alpha = 1.8;      // small-world distance exponent
  int max_degree = 7;
  int max_attempts = 1000;
  std::optional<int> link_count;  // default: 3D mesh edge count
};

// Random valid design: kind assignment permuted by seed, links drawn with
// probability proportional to dist^-alpha, resampled until connected and
// degree-feasible. Throws std::runtime_error when the attempt budget runs out.
Design build_design(const GridSpec& grid, const TileMix& mix,
                    const Technology& tech, std::uint64_t seed,
                    const BuildOptions& opts = {});

// The 64-tile reference configuration: 4 tiers of 4x4, 8 CPU / 16 LLC /
// 40 GPU, mesh-equivalent link budget (144 links).
Design build_hem3d_default(const Technology& tech, std::uint64_t seed);

}  // namespace hem3d
