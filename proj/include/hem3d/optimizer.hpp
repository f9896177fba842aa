#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hem3d/archmodel.hpp"
#include "hem3d/objectives.hpp"
#include "hem3d/pareto.hpp"

namespace hem3d {

// The space both engines search: random valid designs and random valid
// perturbations (tile swaps, link moves). A restricted space pins the link
// set and/or limits swaps to a subset of slots, which keeps toy instances
// exhaustively enumerable.
struct SearchSpace {
  GridSpec grid;
  TileMix mix;
  Technology tech;
  int link_count = 0;
  int max_degree = 7;
  double alpha = 1.8;
  bool allow_link_moves = true;
  std::vector<int> movable_slots;   // empty = all slots
  std::optional<Design> base;       // when set, random designs permute the
                                    // base placement instead of resampling

  static SearchSpace full(const GridSpec& grid, const TileMix& mix,
                          const Technology& tech, double alpha = 1.8,
                          int max_degree = 7);
  static SearchSpace frozen_links(const Design& base, const Technology& tech,
                                  std::vector<int> movable_slots = {});

  Design random_design(Rng& rng) const;
  // Valid perturbed copy; throws std::runtime_error if no valid perturbation
  // is found within the retry bound.
  Design perturb(const Design& design, Rng& rng) const;
};

// Immutable evaluation context shared by both engines. Counts every
// objective evaluation for budget accounting.
struct EvalContext {
  Technology tech;
  TrafficProfile traffic;
  PowerProfile power;
  Mode mode = Mode::Po;
  double ambient_c = kDefaultAmbientC;
  std::vector<double> reference;  // hypervolume reference point

  mutable long long evals = 0;

  ObjectiveVector evaluate(const Design& design) const;
  std::size_t arity() const { return mode == Mode::Pt ? 4u : 3u; }

  // Reference policy: 1.1x the worst objective seen over `samples` random
  // valid designs, fixed for the whole run.
  void init_reference(const SearchSpace& space, std::uint64_t seed,
                      int samples = 100);
};

struct StageConfig {
  int max_iterations = 50;
  double convergence_eps = 0.02;
  int convergence_window = 5;
  int neighbors_per_step = 64;
  int meta_candidates = 100;
  int local_step_budget = 200;
  int tree_max_depth = 8;
  long long eval_budget = 0;  // 0 = unlimited
  std::uint64_t seed = 0;
};

struct AmosaConfig {
  int hard_limit = 50;
  int soft_limit = 100;
  double cooling = 0.95;
  int iters_per_temp = 50;
  double t_min = 1e-9;
  long long eval_budget = 10000;
  int checkpoint_every = 250;
  std::uint64_t seed = 0;
};

struct RunRecord {
  long long iter = 0;
  double global_phv = 0.0;
  long long archive_size = 0;
  long long evals_so_far = 0;
  double wall_ms = 0.0;
};

struct LocalSearchResult {
  ParetoArchive archive;
  std::map<std::string, Design> designs;  // archived entry id -> design
  // Hill-climbing trajectory (accepted designs, start included) with their
  // objective vectors; becomes regression training data.
  std::vector<std::pair<Design, ObjectiveVector>> trajectory;
};

LocalSearchResult local_search(const Design& start, const StageConfig& config,
                               const SearchSpace& space,
                               const EvalContext& ctx, Rng& rng);

// CART-style regression tree: axis-aligned splits maximizing variance
// reduction, leaves predict the row mean.
struct TrainingRow {
  std::vector<double> features;
  double target = 0.0;
};

class RegressionTree {
 public:
  static RegressionTree fit(const std::vector<TrainingRow>& rows,
                            int max_depth = 8);
  static RegressionTree constant(double value);
  static RegressionTree stump(int feature, double threshold, double below,
                              double above);  // hand-built, for tests
  double predict(std::span<const double> features) const;

 private:
  struct Node {
    int feature = -1;  // -1 = leaf
    double threshold = 0.0;
    double value = 0.0;
    int left = -1, right = -1;
  };
  std::vector<Node> nodes_;
  int build(std::vector<const TrainingRow*>& rows, int depth, int max_depth);
};

// Feature vector for the learner: reference-normalized objectives plus
// mean CPU-LLC hop count, mean link length (mm), and max per-stack power
// share.
std::vector<double> design_features(const Design& design,
                                    const ObjectiveVector& objectives,
                                    const EvalContext& ctx);

Design meta_select(const RegressionTree& model, const StageConfig& config,
                   const SearchSpace& space, const EvalContext& ctx, Rng& rng);

struct OptResult {
  ParetoArchive archive;
  std::map<std::string, Design> designs;  // archived design id -> design
  std::vector<RunRecord> runlog;
  long long evals = 0;
};

OptResult moo_stage(const Design& initial, const StageConfig& config,
                    const SearchSpace& space, EvalContext& ctx);

OptResult amosa(const Design& initial, const AmosaConfig& config,
                const SearchSpace& space, EvalContext& ctx);

// AMOSA acceptance probability for a move that worsens by the given average
// amount of domination at temperature T.
double amosa_acceptance(double avg_domination, double temperature);

}  // namespace hem3d
