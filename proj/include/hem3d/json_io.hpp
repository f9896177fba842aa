#pragma once
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "hem3d/archmodel.hpp"
#include "hem3d/optimizer.hpp"
#include "hem3d/pareto.hpp"
#include "hem3d/traffic.hpp"

namespace hem3d {

using ordered_json = nlohmann::ordered_json;

ordered_json design_to_json(const Design& design);
Design design_from_json(const ordered_json& j);

ordered_json technology_to_json(const Technology& tech);
Technology technology_from_json(const ordered_json& j);
// "m3d" / "tsv" resolve to the built-in presets, anything else is a path.
Technology load_technology(const std::string& name_or_path);

ordered_json profile_to_json(const TrafficProfile& traffic,
                             const PowerProfile& power);
std::pair<TrafficProfile, PowerProfile> profile_from_json(
    const ordered_json& j);
std::pair<TrafficProfile, PowerProfile> load_profile(const std::string& path);

ordered_json archive_to_json(const ParetoArchive& archive,
                             const std::map<std::string, Design>& designs);
std::pair<ParetoArchive, std::map<std::string, Design>> archive_from_json(
    const ordered_json& j);

ordered_json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hem3d
