// Command-line front end. Talks to the engine exclusively through the
// exported C API so it doubles as a usage example for embedders.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hem3d.h"

namespace {

using nlohmann::ordered_json;

struct SharedFlags {
  std::string config_path;
  std::string out;
  std::string tech;
  std::string mode;
  std::string optimizer;
  double t_th = -1.0;
  long long seed = -1;
};

void add_shared_flags(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--tech", flags.tech,
                  "technology preset (m3d, tsv) or a JSON file path");
  cmd->add_option("--mode", flags.mode, "objective mode (po, pt)");
  cmd->add_option("--tth", flags.t_th, "PT temperature threshold, degrees C");
  cmd->add_option("--optimizer", flags.optimizer,
                  "search engine (stage, amosa)");
}

// Config file first, then flag overrides (flags win).
ordered_json build_config(const SharedFlags& flags) {
  ordered_json config = ordered_json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      std::cerr << "error: cannot open config: " << flags.config_path << "\n";
      std::exit(1);
    }
    try {
      in >> config;
    } catch (const std::exception& e) {
      std::cerr << "error: bad config JSON: " << e.what() << "\n";
      std::exit(1);
    }
  }
  if (flags.seed >= 0) config["seed"] = flags.seed;
  if (!flags.out.empty()) config["out"] = flags.out;
  if (!flags.tech.empty()) config["tech"] = flags.tech;
  if (!flags.mode.empty()) config["mode"] = flags.mode;
  if (flags.t_th >= 0.0) config["t_th"] = flags.t_th;
  if (!flags.optimizer.empty()) config["optimizer"] = flags.optimizer;
  return config;
}

int finish(hem3d_status status, char* result, char* error) {
  if (result) {
    std::cout << result << "\n";
    hem3d_free_string(result);
  }
  if (error) {
    std::cerr << "error: " << error << "\n";
    hem3d_free_string(error);
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hem3d: 3D manycore design-space exploration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hem3d_version());

  SharedFlags flags;
  std::string design_path, pareto_path, profile_path, et_path;
  std::vector<std::string> paretos, runlogs;

  CLI::App* generate = app.add_subcommand(
      "generate", "write an initial design.json (and synthetic profile.json)");
  add_shared_flags(generate, flags);

  CLI::App* optimize =
      app.add_subcommand("optimize", "run the optimizer; writes pareto.json, "
                                     "runlog.jsonl, metrics.csv");
  add_shared_flags(optimize, flags);
  optimize->add_option("--design", design_path, "design JSON path");
  optimize->add_option("--profile", profile_path, "profile JSON path");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "print the objective vector of a design + profile");
  add_shared_flags(evaluate, flags);
  evaluate->add_option("--design", design_path, "design JSON path");
  evaluate->add_option("--profile", profile_path, "profile JSON path");

  CLI::App* select = app.add_subcommand(
      "select", "pick the final design from a Pareto archive");
  add_shared_flags(select, flags);
  select->add_option("--pareto", pareto_path, "pareto.json path");
  select->add_option("--et", et_path,
                     "external execution-time CSV (design_id,et_seconds[,temp_c])");

  CLI::App* plot =
      app.add_subcommand("plot", "emit SVG reports from run artifacts");
  add_shared_flags(plot, flags);
  plot->add_option("--pareto", paretos, "pareto.json file(s)");
  plot->add_option("--runlog", runlogs, "runlog.jsonl file(s)");

  CLI11_PARSE(app, argc, argv);

  ordered_json config = build_config(flags);
  if (!design_path.empty()) config["design"] = design_path;
  if (!pareto_path.empty()) config["pareto"] = pareto_path;
  if (!profile_path.empty())
    config["profile"] = {{"source", "file"}, {"path", profile_path}};
  if (!et_path.empty())
    config["select"] = {{"source", "external"}, {"path", et_path}};
  if (!paretos.empty()) config["paretos"] = paretos;
  if (!runlogs.empty()) config["runlogs"] = runlogs;
  const std::string config_str = config.dump();

  char* result = nullptr;
  char* error = nullptr;
  hem3d_status status = HEM3D_OK;
  if (generate->parsed()) {
    status = hem3d_cmd_generate(config_str.c_str(), &error);
  } else if (optimize->parsed()) {
    status = hem3d_cmd_optimize(config_str.c_str(), &error);
  } else if (evaluate->parsed()) {
    status = hem3d_cmd_evaluate(config_str.c_str(), &result, &error);
  } else if (select->parsed()) {
    status = hem3d_cmd_select(config_str.c_str(), &result, &error);
  } else if (plot->parsed()) {
    status = hem3d_cmd_plot(config_str.c_str(), &error);
  }
  return finish(status, result, error);
}
