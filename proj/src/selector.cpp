#include "hem3d/selector.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hem3d {

double surrogate_et(const std::vector<double>& objectives,
                    const std::vector<double>& reference,
                    const SurrogateWeights& weights) {
  if (weights.lat < 0.0 || weights.u_mean < 0.0 || weights.u_std < 0.0)
    throw std::invalid_argument("surrogate weights must be >= 0");
  if (objectives.size() < 3 || reference.size() < 3)
    throw std::invalid_argument("surrogate_et needs >= 3 objectives");
  return weights.lat * objectives[0] / reference[0] +
         weights.u_mean * objectives[1] / reference[1] +
         weights.u_std * objectives[2] / reference[2];
}

EtSource EtSource::surrogate(SurrogateWeights weights) {
  EtSource s;
  s.weights = weights;
  return s;
}

EtSource EtSource::external_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ET file: " + path);
  EtSource s;
  s.external = true;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("ET file is empty: " + path);
  if (line.rfind("design_id,et_seconds", 0) != 0)
    throw std::runtime_error("ET file missing required header: " + path);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string id, et, temp;
    if (!std::getline(row, id, ',') || !std::getline(row, et, ','))
      throw std::runtime_error("ET file line " + std::to_string(lineno) +
                               ": expected design_id,et_seconds");
    s.et_seconds[id] = std::stod(et);
    if (std::getline(row, temp, ',')) s.temp_c[id] = std::stod(temp);
  }
  return s;
}

double EtSource::et(const ParetoArchive& archive,
                    const ParetoArchive::Entry& entry) const {
  if (!external)
    return surrogate_et(entry.objectives, archive.reference(), weights);
  auto it = et_seconds.find(entry.design_id);
  if (it == et_seconds.end())
    throw std::runtime_error("ET file does not cover design " +
                             entry.design_id);
  return it->second;
}

std::optional<double> EtSource::temperature(
    const ParetoArchive::Entry& entry) const {
  if (external) {
    auto it = temp_c.find(entry.design_id);
    if (it != temp_c.end()) return it->second;
  }
  if (entry.objectives.size() >= 4) return entry.objectives[3];
  return std::nullopt;
}

Selection select(const ParetoArchive& archive, Mode mode, double t_th,
                 const EtSource& source) {
  if (archive.empty()) throw std::invalid_argument("select on empty archive");

  const ParetoArchive::Entry* best = nullptr;
  double best_et = std::numeric_limits<double>::infinity();
  for (const auto& e : archive.entries()) {
    if (mode == Mode::Pt) {
      const std::optional<double> temp = source.temperature(e);
      if (!temp)
        throw std::invalid_argument("PT selection requires temperatures");
      if (!(*temp < t_th)) continue;
    }
    const double et = source.et(archive, e);
    if (!best || et < best_et ||
        (et == best_et && e.design_id < best->design_id)) {
      best = &e;
      best_et = et;
    }
  }
  if (best) return Selection{best->design_id, best->objectives, true};

  // No design satisfies the PT constraint: return the coolest one, flagged.
  double best_temp = std::numeric_limits<double>::infinity();
  for (const auto& e : archive.entries()) {
    const double temp = *source.temperature(e);
    if (temp < best_temp ||
        (temp == best_temp && best && e.design_id < best->design_id)) {
      best = &e;
      best_temp = temp;
    }
  }
  return Selection{best->design_id, best->objectives, false};
}

}  // namespace hem3d
