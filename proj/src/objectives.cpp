#include "hem3d/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hem3d {

Mode mode_from_string(std::string_view s) {
  if (s == "po") return Mode::Po;
  if (s == "pt") return Mode::Pt;
  throw std::invalid_argument("mode must be po or pt");
}

const char* to_string(Mode mode) { return mode == Mode::Po ? "po" : "pt"; }

std::vector<double> ObjectiveVector::components() const {
  std::vector<double> v{lat, u_mean, u_std};
  if (temp) v.push_back(*temp);
  return v;
}

double latency(const Design& design, const Technology& tech,
               const RoutingTable& table, const TrafficProfile& traffic) {
  std::vector<int> cpus, llcs;
  for (int t = 0; t < design.tile_count(); ++t) {
    if (design.kinds[t] == TileKind::Cpu) cpus.push_back(t);
    if (design.kinds[t] == TileKind::Llc) llcs.push_back(t);
  }
  if (cpus.empty() || llcs.empty())
    throw std::invalid_argument("latency undefined without CPUs and LLCs");
  if (traffic.tiles != design.tile_count())
    throw std::invalid_argument("traffic tile universe != design tiles");

  const double r = static_cast<double>(tech.router_stages);
  std::vector<double> per_window(traffic.windows);
  for (int t = 0; t < traffic.windows; ++t) {
    double sum = 0.0;
    for (int i : cpus) {
      for (int j : llcs) {
        const double f = traffic.at(t, i, j) + traffic.at(t, j, i);
        if (f == 0.0) continue;
        const double d = table.dist(i, j) * tech.link_delay_per_mm;
        sum += (r * table.h(i, j) + d) * f;
      }
    }
    per_window[t] = sum / (static_cast<double>(cpus.size()) *
                           static_cast<double>(llcs.size()));
  }
  return window_average(per_window);
}

namespace {

int link_index(const Design& design, int a, int b) {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(design.links.begin(), design.links.end(),
                             std::make_pair(a, b));
  if (it == design.links.end() || *it != std::make_pair(a, b))
    throw std::logic_error("route traverses a non-existent link");
  return static_cast<int>(it - design.links.begin());
}

}  // namespace

std::vector<double> link_loads(const Design& design, const RoutingTable& table,
                               const TrafficProfile& traffic, int window) {
  if (traffic.tiles != design.tile_count())
    throw std::invalid_argument("traffic tile universe != design tiles");
  std::vector<double> u(design.links.size(), 0.0);
  for (const auto& [pair, f] : traffic.freq.at(window)) {
    if (f == 0.0) continue;
    table.for_each_link(pair.first, pair.second, [&](int a, int b) {
      u[link_index(design, a, b)] += f;
    });
  }
  return u;
}

std::pair<double, double> load_stats(const Design& design,
                                     const RoutingTable& table,
                                     const TrafficProfile& traffic) {
  const int l = design.link_count();
  if (l < 1) throw std::invalid_argument("load_stats needs >= 1 link");
  std::vector<double> means(traffic.windows), stds(traffic.windows);
  for (int t = 0; t < traffic.windows; ++t) {
    const std::vector<double> u = link_loads(design, table, traffic, t);
    double mean = 0.0;
    for (double x : u) mean += x;
    mean /= l;
    double var = 0.0;
    for (double x : u) var += (x - mean) * (x - mean);
    var /= l;  // population variance
    means[t] = mean;
    stds[t] = std::sqrt(var);
  }
  return {window_average(means), window_average(stds)};
}

double peak_temperature(const Design& design, const Technology& tech,
                        const PowerProfile& power, double ambient_c) {
  const int tiers = design.grid.tiers;
  if (static_cast<int>(tech.r_tier.size()) < tiers)
    throw std::invalid_argument("technology r_tier shorter than grid tiers");
  for (int j = 0; j < tiers; ++j)
    if (!(tech.r_tier[j] > 0.0) || !(tech.r_base > 0.0))
      throw std::invalid_argument("thermal resistances must be positive");
  power.check(design.tile_count());

  // Prefix sums of the vertical resistances, sink side first.
  std::vector<double> r_prefix(tiers + 1, 0.0);
  for (int j = 0; j < tiers; ++j) r_prefix[j + 1] = r_prefix[j] + tech.r_tier[j];

  double worst = 0.0;
  for (int t = 0; t < power.windows; ++t) {
    for (int row = 0; row < design.grid.rows; ++row) {
      for (int col = 0; col < design.grid.cols; ++col) {
        double weighted = 0.0;  // sum_i P_i * sum_{j<=i} R_j
        double total_p = 0.0;   // sum_i P_i
        for (int tier = 0; tier < tiers; ++tier) {
          const int tile = design.tile_at[design.grid.slot_index(tier, row, col)];
          const double p = power.watts[t][tile] * tech.power_scale;
          weighted += p * r_prefix[tier + 1];
          total_p += p;
          const double s = weighted + tech.r_base * total_p;
          worst = std::max(worst, s);
        }
      }
    }
  }
  return ambient_c + tech.lateral_factor * worst;
}

ObjectiveVector evaluate(const Design& design, const Technology& tech,
                         const TrafficProfile& traffic,
                         const PowerProfile& power, Mode mode,
                         double ambient_c, const RoutingTable* table) {
  if (traffic.windows != power.windows)
    throw std::invalid_argument("traffic and power window counts differ");
  RoutingTable local;
  if (!table) {
    local = compute_routes(design, tech);
    table = &local;
  }
  ObjectiveVector v;
  v.lat = latency(design, tech, *table, traffic);
  std::tie(v.u_mean, v.u_std) = load_stats(design, *table, traffic);
  if (mode == Mode::Pt)
    v.temp = peak_temperature(design, tech, power, ambient_c);
  return v;
}

}  // namespace hem3d
