#include "hem3d/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace hem3d {

ordered_json design_to_json(const Design& design) {
  ordered_json j;
  j["grid"] = {{"tiers", design.grid.tiers},
               {"rows", design.grid.rows},
               {"cols", design.grid.cols},
               {"tier_pitch_mm", design.grid.tier_pitch_mm},
               {"cell_pitch_mm", design.grid.cell_pitch_mm}};
  ordered_json tiles = ordered_json::array();
  for (int t = 0; t < design.tile_count(); ++t) {
    auto [tier, row, col] = design.grid.slot_coords(design.slot_of[t]);
    tiles.push_back({{"id", t},
                     {"kind", to_string(design.kinds[t])},
                     {"tier", tier},
                     {"row", row},
                     {"col", col}});
  }
  j["tiles"] = std::move(tiles);
  ordered_json links = ordered_json::array();
  for (const auto& [a, b] : design.links) links.push_back({a, b});
  j["links"] = std::move(links);
  return j;
}

Design design_from_json(const ordered_json& j) {
  Design d;
  const auto& g = j.at("grid");
  d.grid.tiers = g.at("tiers").get<int>();
  d.grid.rows = g.at("rows").get<int>();
  d.grid.cols = g.at("cols").get<int>();
  d.grid.tier_pitch_mm = g.at("tier_pitch_mm").get<double>();
  d.grid.cell_pitch_mm = g.at("cell_pitch_mm").get<double>();
  d.grid.check();

  const auto& tiles = j.at("tiles");
  const int n = static_cast<int>(tiles.size());
  if (n != d.grid.slot_count())
    throw std::invalid_argument("design tiles do not fill the grid");
  d.tile_at.assign(n, -1);
  d.kinds.assign(n, TileKind::Gpu);
  for (const auto& tile : tiles) {
    const int id = tile.at("id").get<int>();
    if (id < 0 || id >= n) throw std::invalid_argument("tile id out of range");
    d.kinds[id] = tile_kind_from_string(tile.at("kind").get<std::string>());
    const int slot = d.grid.slot_index(tile.at("tier").get<int>(),
                                       tile.at("row").get<int>(),
                                       tile.at("col").get<int>());
    if (slot < 0 || slot >= n || d.tile_at[slot] != -1)
      throw std::invalid_argument("tile placement is not a bijection");
    d.tile_at[slot] = id;
  }
  d.rebuild_slot_index();
  for (const auto& link : j.at("links"))
    d.links.emplace_back(link.at(0).get<int>(), link.at(1).get<int>());
  d.sort_links();
  for (std::size_t i = 0; i < d.links.size(); ++i) {
    const auto [a, b] = d.links[i];
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("link endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop link");
    if (i > 0 && d.links[i] == d.links[i - 1])
      throw std::invalid_argument("duplicate link");
  }
  return d;
}

ordered_json technology_to_json(const Technology& tech) {
  return ordered_json{{"name", tech.name},
                      {"r_tier", tech.r_tier},
                      {"r_base", tech.r_base},
                      {"lateral_factor", tech.lateral_factor},
                      {"link_delay_per_mm", tech.link_delay_per_mm},
                      {"router_stages", tech.router_stages},
                      {"cpu_freq_ghz", tech.cpu_freq_ghz},
                      {"gpu_freq_ghz", tech.gpu_freq_ghz},
                      {"llc_latency_scale", tech.llc_latency_scale},
                      {"power_scale", tech.power_scale},
                      {"tile_footprint_scale", tech.tile_footprint_scale}};
}

Technology technology_from_json(const ordered_json& j) {
  Technology t;
  t.name = j.at("name").get<std::string>();
  t.r_tier = j.at("r_tier").get<std::vector<double>>();
  t.r_base = j.at("r_base").get<double>();
  t.lateral_factor = j.at("lateral_factor").get<double>();
  t.link_delay_per_mm = j.at("link_delay_per_mm").get<double>();
  t.router_stages = j.at("router_stages").get<int>();
  t.cpu_freq_ghz = j.at("cpu_freq_ghz").get<double>();
  t.gpu_freq_ghz = j.at("gpu_freq_ghz").get<double>();
  t.llc_latency_scale = j.at("llc_latency_scale").get<double>();
  t.power_scale = j.at("power_scale").get<double>();
  t.tile_footprint_scale = j.at("tile_footprint_scale").get<double>();
  t.check();
  return t;
}

Technology load_technology(const std::string& name_or_path) {
  if (name_or_path == "m3d") return m3d_preset();
  if (name_or_path == "tsv") return tsv_preset();
  return technology_from_json(read_json_file(name_or_path));
}

ordered_json profile_to_json(const TrafficProfile& traffic,
                             const PowerProfile& power) {
  ordered_json j;
  j["windows"] = traffic.windows;
  ordered_json tj = ordered_json::array();
  for (int t = 0; t < traffic.windows; ++t) {
    ordered_json entries = ordered_json::array();
    for (const auto& [pair, f] : traffic.freq[t])
      entries.push_back({pair.first, pair.second, f});
    tj.push_back({{"window", t}, {"entries", std::move(entries)}});
  }
  j["traffic"] = std::move(tj);
  ordered_json pj = ordered_json::array();
  for (int t = 0; t < power.windows; ++t)
    pj.push_back({{"window", t}, {"watts", power.watts[t]}});
  j["power"] = std::move(pj);
  return j;
}

std::pair<TrafficProfile, PowerProfile> profile_from_json(
    const ordered_json& j) {
  const int n = j.at("windows").get<int>();
  if (n < 1) throw std::invalid_argument("profile needs >= 1 window");

  PowerProfile power;
  power.windows = n;
  power.watts.resize(n);
  const auto& pj = j.at("power");
  if (static_cast<int>(pj.size()) != n)
    throw std::invalid_argument(
        "power section window count does not match 'windows'");
  std::vector<char> seen(n, 0);
  for (const auto& row : pj) {
    const int t = row.at("window").get<int>();
    if (t < 0 || t >= n || seen[t])
      throw std::invalid_argument("power window indices must be 0..N-1 once");
    seen[t] = 1;
    power.watts[t] = row.at("watts").get<std::vector<double>>();
  }
  const int tiles = static_cast<int>(power.watts[0].size());

  TrafficProfile traffic;
  traffic.windows = n;
  traffic.tiles = tiles;
  traffic.freq.resize(n);
  const auto& tj = j.at("traffic");
  if (static_cast<int>(tj.size()) != n)
    throw std::invalid_argument(
        "traffic section window count does not match 'windows'");
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& row : tj) {
    const int t = row.at("window").get<int>();
    if (t < 0 || t >= n || seen[t])
      throw std::invalid_argument(
          "traffic window indices must be 0..N-1 once");
    seen[t] = 1;
    for (const auto& e : row.at("entries")) {
      const int i = e.at(0).get<int>();
      const int k = e.at(1).get<int>();
      traffic.freq[t][{i, k}] = e.at(2).get<double>();
    }
  }
  traffic.check();
  power.check(tiles);
  return {std::move(traffic), std::move(power)};
}

std::pair<TrafficProfile, PowerProfile> load_profile(const std::string& path) {
  return profile_from_json(read_json_file(path));
}

ordered_json archive_to_json(const ParetoArchive& archive,
                             const std::map<std::string, Design>& designs) {
  ordered_json j;
  j["reference"] = archive.reference();
  ordered_json entries = ordered_json::array();
  // Entries sorted by design id for stable artifacts.
  std::vector<const ParetoArchive::Entry*> sorted;
  for (const auto& e : archive.entries()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) {
              return a->design_id < b->design_id;
            });
  for (const auto* e : sorted)
    entries.push_back(
        {{"design_id", e->design_id}, {"objectives", e->objectives}});
  j["entries"] = std::move(entries);
  ordered_json dj = ordered_json::object();
  for (const auto& [id, design] : designs) dj[id] = design_to_json(design);
  j["designs"] = std::move(dj);
  return j;
}

std::pair<ParetoArchive, std::map<std::string, Design>> archive_from_json(
    const ordered_json& j) {
  ParetoArchive archive(j.at("reference").get<std::vector<double>>());
  for (const auto& e : j.at("entries"))
    archive.insert(e.at("design_id").get<std::string>(),
                   e.at("objectives").get<std::vector<double>>());
  std::map<std::string, Design> designs;
  if (j.contains("designs"))
    for (const auto& [id, dj] : j.at("designs").items())
      designs[id] = design_from_json(dj);
  return {std::move(archive), std::move(designs)};
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("parse error in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace hem3d
