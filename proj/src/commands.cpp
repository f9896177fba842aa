#include "hem3d/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hem3d/objectives.hpp"
#include "hem3d/optimizer.hpp"
#include "hem3d/selector.hpp"
#include "hem3d/svgplot.hpp"

namespace fs = std::filesystem;

namespace hem3d {

namespace {

ordered_json defaults() {
  return ordered_json{
      {"seed", 1},
      {"out", "out"},
      {"tech", "m3d"},
      {"mode", "po"},
      {"t_th", 85.0},
      {"ambient_c", kDefaultAmbientC},
      {"grid",
       {{"tiers", 4}, {"rows", 4}, {"cols", 4}, {"cell_pitch_mm", 2.0}}},
      {"tiles", {{"cpu", 8}, {"llc", 16}, {"gpu", 40}}},
      {"links", {{"alpha", 1.8}, {"max_degree", 7}}},
      {"profile",
       {{"source", "synthetic"},
        {"windows", 8},
        {"intensity", 0.1},
        {"skew", 0.2}}},
      {"optimizer", "stage"},
      {"stage",
       {{"max_iterations", 50},
        {"convergence_eps", 0.02},
        {"convergence_window", 5},
        {"neighbors_per_step", 64},
        {"meta_candidates", 100},
        {"local_step_budget", 200},
        {"tree_max_depth", 8},
        {"eval_budget", 0}}},
      {"amosa",
       {{"hard_limit", 50},
        {"soft_limit", 100},
        {"cooling", 0.95},
        {"iters_per_temp", 50},
        {"eval_budget", 10000},
        {"checkpoint_every", 250}}},
      {"select",
       {{"source", "surrogate"},
        {"weights", {{"lat", 0.5}, {"u_mean", 0.25}, {"u_std", 0.25}}}}},
  };
}

void merge_defaults(ordered_json& config, const ordered_json& base) {
  for (const auto& [key, value] : base.items()) {
    if (!config.contains(key)) {
      config[key] = value;
    } else if (value.is_object() && config[key].is_object()) {
      merge_defaults(config[key], value);
    }
  }
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

fs::path out_dir(const ordered_json& config) {
  fs::path dir = config.at("out").get<std::string>();
  fs::create_directories(dir);
  return dir;
}

Technology config_tech(const ordered_json& config) {
  return load_technology(config.at("tech").get<std::string>());
}

Design config_design(const ordered_json& config) {
  const std::string path =
      config.contains("design")
          ? config.at("design").get<std::string>()
          : (fs::path(config.at("out").get<std::string>()) / "design.json")
                .string();
  return design_from_json(read_json_file(path));
}

std::pair<TrafficProfile, PowerProfile> config_profile(
    const ordered_json& config, const Design& design) {
  const auto& p = config.at("profile");
  if (p.at("source") == "synthetic") {
    return synth_many_to_few(design, p.at("windows").get<int>(),
                             p.at("intensity").get<double>(),
                             p.at("skew").get<double>(),
                             config.at("seed").get<std::uint64_t>());
  }
  if (p.at("source") == "file") {
    auto loaded = load_profile(p.at("path").get<std::string>());
    if (loaded.first.tiles != design.tile_count())
      throw CommandError(1, "profile tile universe does not match design");
    return loaded;
  }
  // Default location written by `generate`.
  auto loaded = load_profile(
      (fs::path(config.at("out").get<std::string>()) / "profile.json")
          .string());
  return loaded;
}

EtSource config_et_source(const ordered_json& config) {
  const auto& s = config.at("select");
  if (s.at("source") == "external")
    return EtSource::external_csv(s.at("path").get<std::string>());
  SurrogateWeights w;
  if (s.contains("weights")) {
    w.lat = s.at("weights").value("lat", 0.5);
    w.u_mean = s.at("weights").value("u_mean", 0.25);
    w.u_std = s.at("weights").value("u_std", 0.25);
  }
  return EtSource::surrogate(w);
}

ordered_json objective_json(const ObjectiveVector& v) {
  ordered_json j{{"lat", v.lat}, {"u_mean", v.u_mean}, {"u_std", v.u_std}};
  if (v.temp) j["temp_c"] = *v.temp;
  return j;
}

std::string metrics_csv(const ParetoArchive& archive) {
  std::ostringstream out;
  out << "design_id,lat,u_mean,u_std,temp_c\n";
  std::vector<const ParetoArchive::Entry*> sorted;
  for (const auto& e : archive.entries()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->design_id < b->design_id;
  });
  for (const auto* e : sorted) {
    out << e->design_id;
    for (std::size_t c = 0; c < 4; ++c) {
      out << ',';
      if (c < e->objectives.size())
        out << ordered_json(e->objectives[c]).dump();
    }
    out << '\n';
  }
  return out.str();
}

std::string runlog_jsonl(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  for (const RunRecord& r : records) {
    out << ordered_json{{"iter", r.iter},
                        {"global_phv", r.global_phv},
                        {"archive_size", r.archive_size},
                        {"evals_so_far", r.evals_so_far},
                        {"wall_ms", r.wall_ms}}
               .dump()
        << '\n';
  }
  return out.str();
}

}  // namespace

ordered_json normalize_config(ordered_json config) {
  try {
    if (!config.is_object())
      throw std::invalid_argument("config must be a JSON object");
    merge_defaults(config, defaults());
    mode_from_string(config.at("mode").get<std::string>());
    const auto& grid = config.at("grid");
    const int capacity = grid.at("tiers").get<int>() *
                         grid.at("rows").get<int>() *
                         grid.at("cols").get<int>();
    const auto& tiles = config.at("tiles");
    const int mix = tiles.at("cpu").get<int>() + tiles.at("llc").get<int>() +
                    tiles.at("gpu").get<int>();
    if (mix != capacity)
      throw std::invalid_argument(
          "tile mix (" + std::to_string(mix) + ") does not match grid capacity (" +
          std::to_string(capacity) + ")");
    const std::string opt = config.at("optimizer").get<std::string>();
    if (opt != "stage" && opt != "amosa")
      throw std::invalid_argument("optimizer must be stage or amosa");
    return config;
  } catch (const CommandError&) {
    throw;
  } catch (const std::exception& e) {
    throw CommandError(1, std::string("invalid config: ") + e.what());
  }
}

void cmd_generate(const ordered_json& raw) {
  const ordered_json config = normalize_config(raw);
  const Technology tech = config_tech(config);
  const auto& g = config.at("grid");
  GridSpec grid;
  grid.tiers = g.at("tiers").get<int>();
  grid.rows = g.at("rows").get<int>();
  grid.cols = g.at("cols").get<int>();
  grid.cell_pitch_mm = g.at("cell_pitch_mm").get<double>();
  grid.tier_pitch_mm =
      g.value("tier_pitch_mm", default_tier_pitch_mm(tech));
  const auto& tiles = config.at("tiles");
  TileMix mix{tiles.at("cpu").get<int>(), tiles.at("llc").get<int>(),
              tiles.at("gpu").get<int>()};
  BuildOptions opts;
  opts.alpha = config.at("links").at("alpha").get<double>();
  opts.max_degree = config.at("links").at("max_degree").get<int>();
  if (config.at("links").contains("count"))
    opts.link_count = config.at("links").at("count").get<int>();

  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
  const Design design = build_design(grid, mix, tech, seed, opts);
  const fs::path dir = out_dir(config);
  write_text_file((dir / "design.json").string(),
                  json_text(design_to_json(design)));

  if (config.at("profile").at("source") == "synthetic") {
    const auto [traffic, power] = config_profile(config, design);
    write_text_file((dir / "profile.json").string(),
                    json_text(profile_to_json(traffic, power)));
  }
}

void cmd_optimize(const ordered_json& raw) {
  const ordered_json config = normalize_config(raw);
  const Technology tech = config_tech(config);
  const Design design = config_design(config);
  const auto [traffic, power] = config_profile(config, design);

  EvalContext ctx;
  ctx.tech = tech;
  ctx.traffic = traffic;
  ctx.power = power;
  ctx.mode = mode_from_string(config.at("mode").get<std::string>());
  ctx.ambient_c = config.at("ambient_c").get<double>();

  TileMix mix;
  for (TileKind k : design.kinds) {
    if (k == TileKind::Cpu) ++mix.cpu;
    if (k == TileKind::Llc) ++mix.llc;
    if (k == TileKind::Gpu) ++mix.gpu;
  }
  SearchSpace space = SearchSpace::full(
      design.grid, mix, tech, config.at("links").at("alpha").get<double>(),
      config.at("links").at("max_degree").get<int>());
  space.link_count = design.link_count();

  const std::uint64_t seed = config.at("seed").get<std::uint64_t>();
  OptResult result;
  if (config.at("optimizer") == "stage") {
    const auto& s = config.at("stage");
    StageConfig sc;
    sc.max_iterations = s.at("max_iterations").get<int>();
    sc.convergence_eps = s.at("convergence_eps").get<double>();
    sc.convergence_window = s.at("convergence_window").get<int>();
    sc.neighbors_per_step = s.at("neighbors_per_step").get<int>();
    sc.meta_candidates = s.at("meta_candidates").get<int>();
    sc.local_step_budget = s.at("local_step_budget").get<int>();
    sc.tree_max_depth = s.at("tree_max_depth").get<int>();
    sc.eval_budget = s.at("eval_budget").get<long long>();
    sc.seed = seed;
    result = moo_stage(design, sc, space, ctx);
  } else {
    const auto& a = config.at("amosa");
    AmosaConfig ac;
    ac.hard_limit = a.at("hard_limit").get<int>();
    ac.soft_limit = a.at("soft_limit").get<int>();
    ac.cooling = a.at("cooling").get<double>();
    ac.iters_per_temp = a.at("iters_per_temp").get<int>();
    ac.eval_budget = a.at("eval_budget").get<long long>();
    ac.checkpoint_every = a.at("checkpoint_every").get<int>();
    ac.seed = seed;
    result = amosa(design, ac, space, ctx);
  }

  const fs::path dir = out_dir(config);
  write_text_file((dir / "pareto.json").string(),
                  json_text(archive_to_json(result.archive, result.designs)));
  write_text_file((dir / "runlog.jsonl").string(), runlog_jsonl(result.runlog));
  write_text_file((dir / "metrics.csv").string(), metrics_csv(result.archive));
}

ordered_json cmd_evaluate(const ordered_json& raw) {
  const ordered_json config = normalize_config(raw);
  const Technology tech = config_tech(config);
  const Design design = config_design(config);
  if (auto violation = validate(
          design, config.at("links").at("max_degree").get<int>()))
    throw CommandError(2, "invalid design: " + violation->rule + " (" +
                              violation->detail + ")");
  const auto [traffic, power] = config_profile(config, design);
  const ObjectiveVector v = evaluate(
      design, tech, traffic, power,
      mode_from_string(config.at("mode").get<std::string>()),
      config.at("ambient_c").get<double>());
  return objective_json(v);
}

ordered_json cmd_select(const ordered_json& raw) {
  const ordered_json config = normalize_config(raw);
  const std::string pareto_path =
      config.contains("pareto")
          ? config.at("pareto").get<std::string>()
          : (fs::path(config.at("out").get<std::string>()) / "pareto.json")
                .string();
  auto [archive, designs] = archive_from_json(read_json_file(pareto_path));
  if (archive.empty()) throw CommandError(2, "pareto archive is empty");

  const Selection sel =
      select(archive, mode_from_string(config.at("mode").get<std::string>()),
             config.at("t_th").get<double>(), config_et_source(config));

  ordered_json result{{"design_id", sel.design_id},
                      {"objectives", sel.objectives},
                      {"feasible", sel.feasible}};
  auto it = designs.find(sel.design_id);
  if (it != designs.end()) result["design"] = design_to_json(it->second);
  write_text_file((out_dir(config) / "selected.json").string(),
                  json_text(result));
  return result;
}

void cmd_plot(const ordered_json& raw) {
  const ordered_json config = normalize_config(raw);
  const fs::path dir = out_dir(config);

  std::vector<std::string> pareto_paths, runlog_paths;
  if (config.contains("paretos"))
    pareto_paths = config.at("paretos").get<std::vector<std::string>>();
  else if (fs::exists(dir / "pareto.json"))
    pareto_paths.push_back((dir / "pareto.json").string());
  if (config.contains("runlogs"))
    runlog_paths = config.at("runlogs").get<std::vector<std::string>>();
  else if (fs::exists(dir / "runlog.jsonl"))
    runlog_paths.push_back((dir / "runlog.jsonl").string());

  std::vector<svg::Series> lat_ustd, lat_temp;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> bar_values;
  for (const std::string& path : pareto_paths) {
    auto [archive, designs] = archive_from_json(read_json_file(path));
    const std::string label = fs::path(path).parent_path().filename().string() +
                              "/" + fs::path(path).stem().string();
    svg::Series su{label, {}}, st{label, {}};
    double sel_temp = 0.0, sel_et = 0.0;
    for (const auto& e : archive.entries()) {
      su.points.emplace_back(e.objectives[0], e.objectives[2]);
      if (e.objectives.size() >= 4)
        st.points.emplace_back(e.objectives[0], e.objectives[3]);
    }
    if (!archive.empty()) {
      const Selection sel =
          select(archive, Mode::Po, config.at("t_th").get<double>(),
                 config_et_source(config));
      sel_et = surrogate_et(sel.objectives, archive.reference());
      if (sel.objectives.size() >= 4) sel_temp = sel.objectives[3];
    }
    lat_ustd.push_back(std::move(su));
    lat_temp.push_back(std::move(st));
    labels.push_back(label);
    bar_values.push_back({sel_temp, sel_et});
  }
  write_text_file((dir / "front_lat_ustd.svg").string(),
                  svg::scatter("Pareto front", "latency (cycles)",
                               "link load std", lat_ustd));
  write_text_file((dir / "front_lat_temp.svg").string(),
                  svg::scatter("Pareto front", "latency (cycles)",
                               "peak temperature (C)", lat_temp));

  std::vector<svg::Series> curves;
  for (const std::string& path : runlog_paths) {
    std::ifstream in(path);
    if (!in) throw CommandError(2, "cannot open runlog: " + path);
    svg::Series s{fs::path(path).parent_path().filename().string() + "/" +
                      fs::path(path).stem().string(),
                  {}};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const ordered_json r = ordered_json::parse(line);
      s.points.emplace_back(r.at("evals_so_far").get<double>(),
                            r.at("global_phv").get<double>());
    }
    curves.push_back(std::move(s));
  }
  write_text_file((dir / "convergence.svg").string(),
                  svg::lines("Hypervolume convergence", "objective evaluations",
                             "global PHV", curves));

  write_text_file(
      (dir / "summary_bars.svg").string(),
      svg::bars("Selected designs", "value", labels,
                {"peak temp (C)", "surrogate ET"}, bar_values));
}

}  // namespace hem3d
