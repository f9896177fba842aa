#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hem3d/objectives.hpp"
#include "hem3d/pareto.hpp"

namespace hem3d {

struct SurrogateWeights {
  double lat = 0.5;
  double u_mean = 0.25;
  double u_std = 0.25;
};

// Weighted sum of the reference-normalized performance objectives; a
// documented stand-in for simulated execution time. Monotone nondecreasing
// in every component. Throws on negative weights.
double surrogate_et(const std::vector<double>& objectives,
                    const std::vector<double>& reference,
                    const SurrogateWeights& weights = {});

// Execution-time source: analytic surrogate, or an external CSV mapping
// design_id -> et_seconds[, temp_c] produced by the user's own simulator.
struct EtSource {
  static EtSource surrogate(SurrogateWeights weights = {});
  static EtSource external_csv(const std::string& path);  // throws on parse

  bool external = false;
  SurrogateWeights weights;
  std::map<std::string, double> et_seconds;
  std::map<std::string, double> temp_c;  // optional third column

  double et(const ParetoArchive& archive,
            const ParetoArchive::Entry& entry) const;
  std::optional<double> temperature(const ParetoArchive::Entry& entry) const;
};

struct Selection {
  std::string design_id;
  std::vector<double> objectives;
  bool feasible = true;  // false: PT constraint unsatisfiable, coolest pick
};

// Final design choice from the Pareto set: lowest ET for PO; lowest ET
// subject to temp < t_th for PT (falls back to the coolest design when no
// entry satisfies the constraint). Ties broken by lowest design id.
Selection select(const ParetoArchive& archive, Mode mode, double t_th,
                 const EtSource& source);

}  // namespace hem3d
