#include "hem3d.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hem3d/archmodel.hpp"
#include "hem3d/commands.hpp"
#include "hem3d/pareto.hpp"

struct hem3d_design {
  hem3d::Design design;
};

struct hem3d_archive {
  hem3d::ParetoArchive archive;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error_out, const std::string& message) {
  if (error_out) *error_out = dup_string(message);
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
hem3d_status guarded(char** error_out, Fn&& fn) {
  try {
    return fn();
  } catch (const hem3d::CommandError& e) {
    set_error(error_out, e.what());
    return static_cast<hem3d_status>(e.exit_code);
  } catch (const std::invalid_argument& e) {
    set_error(error_out, e.what());
    return HEM3D_ERR_CONFIG;
  } catch (const std::bad_alloc&) {
    set_error(error_out, "out of memory");
    return HEM3D_ERR_RUNTIME;
  } catch (const std::exception& e) {
    set_error(error_out, e.what());
    return HEM3D_ERR_RUNTIME;
  }
}

hem3d::ordered_json parse_config(const char* config_json) {
  if (!config_json)
    throw hem3d::CommandError(1, "config JSON must not be null");
  try {
    return hem3d::ordered_json::parse(config_json);
  } catch (const std::exception& e) {
    throw hem3d::CommandError(1, std::string("config parse error: ") + e.what());
  }
}

}  // namespace

extern "C" {

const char* hem3d_version(void) { return "1.0.0"; }

void hem3d_free_string(char* s) { std::free(s); }

hem3d_status hem3d_cmd_generate(const char* config_json, char** error_out) {
  return guarded(error_out, [&] {
    hem3d::cmd_generate(parse_config(config_json));
    return HEM3D_OK;
  });
}

hem3d_status hem3d_cmd_optimize(const char* config_json, char** error_out) {
  return guarded(error_out, [&] {
    hem3d::cmd_optimize(parse_config(config_json));
    return HEM3D_OK;
  });
}

hem3d_status hem3d_cmd_evaluate(const char* config_json,
                                char** result_json_out, char** error_out) {
  return guarded(error_out, [&] {
    const hem3d::ordered_json result =
        hem3d::cmd_evaluate(parse_config(config_json));
    if (result_json_out) *result_json_out = dup_string(result.dump(2));
    return HEM3D_OK;
  });
}

hem3d_status hem3d_cmd_select(const char* config_json, char** result_json_out,
                              char** error_out) {
  return guarded(error_out, [&] {
    const hem3d::ordered_json result =
        hem3d::cmd_select(parse_config(config_json));
    if (result_json_out) *result_json_out = dup_string(result.dump(2));
    if (!result.at("feasible").get<bool>()) {
      set_error(error_out, "no archived design satisfies the PT temperature "
                           "constraint; returned the coolest design");
      return HEM3D_ERR_INFEASIBLE;
    }
    return HEM3D_OK;
  });
}

hem3d_status hem3d_cmd_plot(const char* config_json, char** error_out) {
  return guarded(error_out, [&] {
    hem3d::cmd_plot(parse_config(config_json));
    return HEM3D_OK;
  });
}

hem3d_status hem3d_design_parse(const char* json, hem3d_design** out,
                                char** error_out) {
  return guarded(error_out, [&] {
    if (!json || !out)
      throw hem3d::CommandError(1, "null argument to hem3d_design_parse");
    hem3d::Design d =
        hem3d::design_from_json(hem3d::ordered_json::parse(json));
    *out = new hem3d_design{std::move(d)};
    return HEM3D_OK;
  });
}

hem3d_status hem3d_design_emit(const hem3d_design* design, char** json_out) {
  return guarded(nullptr, [&] {
    if (!design || !json_out) return HEM3D_ERR_CONFIG;
    *json_out = dup_string(hem3d::design_to_json(design->design).dump(2));
    return HEM3D_OK;
  });
}

hem3d_status hem3d_design_validate(const hem3d_design* design, int max_degree,
                                   char** error_out) {
  return guarded(error_out, [&] {
    if (!design)
      throw hem3d::CommandError(1, "null design handle");
    if (auto v = hem3d::validate(design->design, max_degree)) {
      set_error(error_out, v->rule + ": " + v->detail);
      return HEM3D_ERR_RUNTIME;
    }
    return HEM3D_OK;
  });
}

int hem3d_design_tile_count(const hem3d_design* design) {
  return design ? design->design.tile_count() : -1;
}

int hem3d_design_link_count(const hem3d_design* design) {
  return design ? design->design.link_count() : -1;
}

void hem3d_design_free(hem3d_design* design) { delete design; }

hem3d_status hem3d_archive_parse(const char* json, hem3d_archive** out,
                                 char** error_out) {
  return guarded(error_out, [&] {
    if (!json || !out)
      throw hem3d::CommandError(1, "null argument to hem3d_archive_parse");
    auto [archive, designs] =
        hem3d::archive_from_json(hem3d::ordered_json::parse(json));
    (void)designs;
    *out = new hem3d_archive{std::move(archive)};
    return HEM3D_OK;
  });
}

int hem3d_archive_size(const hem3d_archive* archive) {
  return archive ? static_cast<int>(archive->archive.size()) : -1;
}

double hem3d_archive_hypervolume(const hem3d_archive* archive) {
  return archive ? archive->archive.hypervolume() : -1.0;
}

void hem3d_archive_free(hem3d_archive* archive) { delete archive; }

}  // extern "C"
