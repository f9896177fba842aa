#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "hem3d/archmodel.hpp"
#include "hem3d/routing.hpp"
#include "hem3d/traffic.hpp"

namespace hem3d {

enum class Mode { Po, Pt };

Mode mode_from_string(std::string_view s);
const char* to_string(Mode mode);

// Minimization objective vector: latency, link-load mean and standard
// deviation, and (PT only) peak temperature.
struct ObjectiveVector {
  double lat = 0.0;
  double u_mean = 0.0;
  double u_std = 0.0;
  std::optional<double> temp;

  std::size_t arity() const { return temp ? 4u : 3u; }
  std::vector<double> components() const;

  bool operator==(const ObjectiveVector&) const = default;
};

inline constexpr double kDefaultAmbientC = 45.0;

// Window-averaged CPU-LLC latency: per window,
// (1/(C*M)) sum_{i in CPU} sum_{j in LLC} (r*h_ij + d_ij) * (f_ij + f_ji).
double latency(const Design& design, const Technology& tech,
               const RoutingTable& table, const TrafficProfile& traffic);

// Per-link utilization u_k for one window: traffic accumulated over every
// stored route that traverses the link. Order matches design.links.
std::vector<double> link_loads(const Design& design, const RoutingTable& table,
                               const TrafficProfile& traffic, int window);

// Window-averaged mean and population standard deviation of link loads.
std::pair<double, double> load_stats(const Design& design,
                                     const RoutingTable& table,
                                     const TrafficProfile& traffic);

// Vertical resistive-stack thermal model. Tiles are grouped into stacks by
// (row, col); tier 0 is adjacent to the sink. Worst window, worst stack.
double peak_temperature(const Design& design, const Technology& tech,
                        const PowerProfile& power,
                        double ambient_c = kDefaultAmbientC);

ObjectiveVector evaluate(const Design& design, const Technology& tech,
                         const TrafficProfile& traffic,
                         const PowerProfile& power, Mode mode,
                         double ambient_c = kDefaultAmbientC,
                         const RoutingTable* table = nullptr);

}  // namespace hem3d
