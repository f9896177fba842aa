#include "hem3d/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hem3d {

namespace {

std::string design_id_for(long long eval_index) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "d%08lld", eval_index);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

}  // namespace

SearchSpace SearchSpace::full(const GridSpec& grid, const TileMix& mix,
                              const Technology& tech, double alpha,
                              int max_degree) {
  SearchSpace s;
  s.grid = grid;
  s.mix = mix;
  s.tech = tech;
  s.link_count = grid.mesh_link_count();
  s.alpha = alpha;
  s.max_degree = max_degree;
  return s;
}

SearchSpace SearchSpace::frozen_links(const Design& base,
                                      const Technology& tech,
                                      std::vector<int> movable_slots) {
  SearchSpace s;
  s.grid = base.grid;
  for (TileKind k : base.kinds) {
    if (k == TileKind::Cpu) ++s.mix.cpu;
    if (k == TileKind::Llc) ++s.mix.llc;
    if (k == TileKind::Gpu) ++s.mix.gpu;
  }
  s.tech = tech;
  s.link_count = base.link_count();
  s.allow_link_moves = false;
  s.movable_slots = std::move(movable_slots);
  s.base = base;
  return s;
}

Design SearchSpace::random_design(Rng& rng) const {
  if (base) {
    Design d = *base;
    std::vector<int> slots = movable_slots;
    if (slots.empty()) {
      slots.resize(grid.slot_count());
      std::iota(slots.begin(), slots.end(), 0);
    }
    std::vector<int> tiles;
    tiles.reserve(slots.size());
    for (int s : slots) tiles.push_back(d.tile_at[s]);
    rng.shuffle(tiles);
    for (std::size_t i = 0; i < slots.size(); ++i)
      d.tile_at[slots[i]] = tiles[i];
    d.rebuild_slot_index();
    return d;
  }
  BuildOptions opts;
  opts.alpha = alpha;
  opts.max_degree = max_degree;
  opts.link_count = link_count;
  return build_design(grid, mix, tech, rng.next(), opts);
}

Design SearchSpace::perturb(const Design& design, Rng& rng) const {
  const int retries = 200;
  std::vector<int> slots = movable_slots;
  if (slots.empty()) {
    slots.resize(grid.slot_count());
    std::iota(slots.begin(), slots.end(), 0);
  }
  const bool can_swap = slots.size() >= 2;
  for (int attempt = 0; attempt < retries; ++attempt) {
    const bool move_link =
        allow_link_moves && design.link_count() > 0 &&
        (!can_swap || rng.uniform() < 0.5);
    if (!move_link) {
      if (!can_swap) break;
      int a = slots[rng.range(0, static_cast<int>(slots.size()))];
      int b = slots[rng.range(0, static_cast<int>(slots.size()))];
      if (a == b) continue;
      Design d = design;
      std::swap(d.tile_at[a], d.tile_at[b]);
      d.rebuild_slot_index();
      return d;
    }
    const int n = design.tile_count();
    int drop = rng.range(0, design.link_count());
    int p = rng.range(0, n);
    int q = rng.range(0, n);
    if (p == q) continue;
    if (p > q) std::swap(p, q);
    if (design.has_link(p, q)) continue;
    Design d = design;
    d.links.erase(d.links.begin() + drop);
    d.links.emplace_back(p, q);
    d.sort_links();
    if (validate(d, max_degree)) continue;  // violation -> resample
    return d;
  }
  throw std::runtime_error("no valid perturbation found within retry bound");
}

ObjectiveVector EvalContext::evaluate(const Design& design) const {
  ++evals;
  return hem3d::evaluate(design, tech, traffic, power, mode, ambient_c);
}

void EvalContext::init_reference(const SearchSpace& space, std::uint64_t seed,
                                 int samples) {
  Rng rng(seed);
  std::vector<double> worst(arity(), 0.0);
  for (int i = 0; i < samples; ++i) {
    const Design d = space.random_design(rng);
    const std::vector<double> v = evaluate(d).components();
    for (std::size_t c = 0; c < worst.size(); ++c)
      worst[c] = std::max(worst[c], v[c]);
  }
  reference.resize(worst.size());
  for (std::size_t c = 0; c < worst.size(); ++c)
    reference[c] = std::max(1.1 * worst[c], 1e-9);
}

// ---------------------------------------------------------------------------
// Local greedy search

namespace {

struct TrackedEval {
  std::string id;
  ObjectiveVector vec;
};

TrackedEval eval_tracked(const EvalContext& ctx, const Design& d) {
  ObjectiveVector v = ctx.evaluate(d);
  return {design_id_for(ctx.evals), std::move(v)};
}

}  // namespace

LocalSearchResult local_search(const Design& start, const StageConfig& config,
                               const SearchSpace& space,
                               const EvalContext& ctx, Rng& rng) {
  if (ctx.reference.empty())
    throw std::logic_error("local_search requires an initialized reference");
  LocalSearchResult result{ParetoArchive(ctx.reference), {}, {}};

  Design current = start;
  TrackedEval cur = eval_tracked(ctx, current);
  if (result.archive.insert(cur.id, cur.vec.components()) ==
      InsertResult::Added)
    result.designs[cur.id] = current;
  result.trajectory.emplace_back(current, cur.vec);

  constexpr double kGainTol = 1e-12;
  for (int step = 0; step < config.local_step_budget; ++step) {
    if (config.eval_budget > 0 && ctx.evals >= config.eval_budget) break;

    std::vector<Design> neighbors;
    std::vector<TrackedEval> evals;
    neighbors.reserve(config.neighbors_per_step);
    double best_gain = -1.0;
    int best = -1;
    for (int k = 0; k < config.neighbors_per_step; ++k) {
      if (config.eval_budget > 0 && ctx.evals >= config.eval_budget) break;
      neighbors.push_back(space.perturb(current, rng));
      evals.push_back(eval_tracked(ctx, neighbors.back()));
      const double gain =
          result.archive.hypervolume_gain(evals.back().vec.components());
      if (gain > best_gain) {
        best_gain = gain;
        best = k;
      }
    }
    // Every evaluated neighbor is offered to the local Pareto set.
    for (std::size_t k = 0; k < evals.size(); ++k)
      if (result.archive.insert(evals[k].id, evals[k].vec.components()) ==
          InsertResult::Added)
        result.designs[evals[k].id] = neighbors[k];

    if (best < 0 || best_gain <= kGainTol) break;  // local optimum
    current = neighbors[best];
    result.trajectory.emplace_back(current, evals[best].vec);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Regression tree

RegressionTree RegressionTree::constant(double value) {
  RegressionTree t;
  t.nodes_.push_back(Node{-1, 0.0, value, -1, -1});
  return t;
}

RegressionTree RegressionTree::stump(int feature, double threshold,
                                     double below, double above) {
  RegressionTree t;
  t.nodes_.push_back(Node{feature, threshold, 0.0, 1, 2});
  t.nodes_.push_back(Node{-1, 0.0, below, -1, -1});
  t.nodes_.push_back(Node{-1, 0.0, above, -1, -1});
  return t;
}

double RegressionTree::predict(std::span<const double> features) const {
  int i = 0;
  for (;;) {
    const Node& n = nodes_[i];
    if (n.feature < 0) return n.value;
    i = features[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                     : n.right;
  }
}

int RegressionTree::build(std::vector<const TrainingRow*>& rows, int depth,
                          int max_depth) {
  constexpr int kMinLeaf = 2;
  const int n = static_cast<int>(rows.size());
  double sum = 0.0, sum2 = 0.0;
  for (const TrainingRow* r : rows) {
    sum += r->target;
    sum2 += r->target * r->target;
  }
  const double mean = sum / n;
  const double sse = sum2 - sum * sum / n;

  const int node_index = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{-1, 0.0, mean, -1, -1});
  if (depth >= max_depth || n < 2 * kMinLeaf || sse <= 1e-12)
    return node_index;

  const std::size_t n_features = rows.front()->features.size();
  double best_cost = sse;
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<const TrainingRow*> sorted(rows);
  for (std::size_t f = 0; f < n_features; ++f) {
    std::stable_sort(sorted.begin(), sorted.end(),
                     [f](const TrainingRow* a, const TrainingRow* b) {
                       return a->features[f] < b->features[f];
                     });
    double left_sum = 0.0, left_sum2 = 0.0;
    for (int k = 1; k < n; ++k) {
      const double t = sorted[k - 1]->target;
      left_sum += t;
      left_sum2 += t * t;
      if (sorted[k - 1]->features[f] >= sorted[k]->features[f]) continue;
      if (k < kMinLeaf || n - k < kMinLeaf) continue;
      const double right_sum = sum - left_sum;
      const double right_sum2 = sum2 - left_sum2;
      const double cost = (left_sum2 - left_sum * left_sum / k) +
                          (right_sum2 - right_sum * right_sum / (n - k));
      if (cost < best_cost - 1e-12) {
        best_cost = cost;
        best_feature = static_cast<int>(f);
        best_threshold =
            0.5 * (sorted[k - 1]->features[f] + sorted[k]->features[f]);
      }
    }
  }
  if (best_feature < 0) return node_index;

  std::vector<const TrainingRow*> left, right;
  for (const TrainingRow* r : rows) {
    (r->features[static_cast<std::size_t>(best_feature)] <= best_threshold
         ? left
         : right)
        .push_back(r);
  }
  nodes_[node_index].feature = best_feature;
  nodes_[node_index].threshold = best_threshold;
  const int l = build(left, depth + 1, max_depth);
  const int r = build(right, depth + 1, max_depth);
  nodes_[node_index].left = l;
  nodes_[node_index].right = r;
  return node_index;
}

RegressionTree RegressionTree::fit(const std::vector<TrainingRow>& rows,
                                   int max_depth) {
  if (rows.empty()) return constant(0.0);
  RegressionTree t;
  std::vector<const TrainingRow*> ptrs;
  ptrs.reserve(rows.size());
  for (const TrainingRow& r : rows) ptrs.push_back(&r);
  t.build(ptrs, 0, max_depth);
  return t;
}

// ---------------------------------------------------------------------------
// Features and meta search

std::vector<double> design_features(const Design& design,
                                    const ObjectiveVector& objectives,
                                    const EvalContext& ctx) {
  std::vector<double> features;
  const std::vector<double> comps = objectives.components();
  for (std::size_t c = 0; c < comps.size(); ++c)
    features.push_back(comps[c] / ctx.reference[c]);

  const RoutingTable table = compute_routes(design, ctx.tech);
  double hop_sum = 0.0;
  long long pairs = 0;
  for (int i = 0; i < design.tile_count(); ++i) {
    if (design.kinds[i] != TileKind::Cpu) continue;
    for (int j = 0; j < design.tile_count(); ++j) {
      if (design.kinds[j] != TileKind::Llc) continue;
      hop_sum += table.h(i, j);
      ++pairs;
    }
  }
  features.push_back(pairs ? hop_sum / pairs : 0.0);

  double len_sum = 0.0;
  for (const auto& [a, b] : design.links)
    len_sum += link_length_mm(design, ctx.tech, a, b);
  features.push_back(design.link_count() ? len_sum / design.link_count() : 0.0);

  // Max per-stack share of window-averaged power.
  std::vector<double> avg_power(design.tile_count(), 0.0);
  for (int t = 0; t < ctx.power.windows; ++t)
    for (int i = 0; i < design.tile_count(); ++i)
      avg_power[i] += ctx.power.watts[t][i];
  double total = 0.0;
  for (double& p : avg_power) {
    p /= ctx.power.windows;
    total += p;
  }
  double max_share = 0.0;
  if (total > 0.0) {
    for (int row = 0; row < design.grid.rows; ++row) {
      for (int col = 0; col < design.grid.cols; ++col) {
        double stack = 0.0;
        for (int tier = 0; tier < design.grid.tiers; ++tier)
          stack += avg_power[design.tile_at[design.grid.slot_index(tier, row, col)]];
        max_share = std::max(max_share, stack / total);
      }
    }
  }
  features.push_back(max_share);
  return features;
}

Design meta_select(const RegressionTree& model, const StageConfig& config,
                   const SearchSpace& space, const EvalContext& ctx,
                   Rng& rng) {
  Design best;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < config.meta_candidates; ++i) {
    Design cand = space.random_design(rng);
    const ObjectiveVector v = ctx.evaluate(cand);
    const std::vector<double> f = design_features(cand, v, ctx);
    const double score = model.predict(f);
    if (score > best_score) {  // ties keep the earliest candidate
      best_score = score;
      best = std::move(cand);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// MOO-STAGE

OptResult moo_stage(const Design& initial, const StageConfig& config,
                    const SearchSpace& space, EvalContext& ctx) {
  Rng rng(config.seed);
  if (ctx.reference.empty()) ctx.init_reference(space, rng.next());

  const auto t0 = std::chrono::steady_clock::now();
  OptResult result;
  result.archive = ParetoArchive(ctx.reference);
  std::vector<TrainingRow> training;
  Design current = initial;

  double prev_phv = 0.0;
  int stable_iters = 0;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    LocalSearchResult lsr = local_search(current, config, space, ctx, rng);
    for (const auto& e : lsr.archive.entries())
      if (result.archive.insert(e.design_id, e.objectives) ==
          InsertResult::Added)
        result.designs[e.design_id] = lsr.designs.at(e.design_id);

    const double phv = result.archive.hypervolume();
    result.runlog.push_back(RunRecord{iter, phv,
                                      static_cast<long long>(result.archive.size()),
                                      ctx.evals, elapsed_ms(t0)});

    const double target = lsr.archive.hypervolume();
    for (const auto& [design, vec] : lsr.trajectory)
      training.push_back(TrainingRow{design_features(design, vec, ctx), target});

    const double rel_change =
        std::abs(phv - prev_phv) / std::max(prev_phv, 1e-12);
    if (iter > 1 && rel_change < config.convergence_eps)
      ++stable_iters;
    else
      stable_iters = 0;
    prev_phv = phv;
    if (stable_iters >= config.convergence_window) break;
    if (config.eval_budget > 0 && ctx.evals >= config.eval_budget) break;
    if (iter == config.max_iterations) break;

    const RegressionTree model =
        RegressionTree::fit(training, config.tree_max_depth);
    current = meta_select(model, config, space, ctx, rng);
  }
  // Keep only designs still present in the archive.
  std::map<std::string, Design> kept;
  for (const auto& e : result.archive.entries()) {
    auto it = result.designs.find(e.design_id);
    if (it != result.designs.end()) kept[e.design_id] = it->second;
  }
  result.designs = std::move(kept);
  result.evals = ctx.evals;
  return result;
}

// ---------------------------------------------------------------------------
// AMOSA

double amosa_acceptance(double avg_domination, double temperature) {
  if (avg_domination <= 0.0) return 1.0;
  if (temperature <= 0.0) return 0.0;
  return 1.0 / (1.0 + std::exp(avg_domination / temperature));
}

namespace {

double domination_amount(const std::vector<double>& a,
                         const std::vector<double>& b,
                         const std::vector<double>& ref) {
  double amount = 1.0;
  bool any = false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = std::abs(a[c] - b[c]) / ref[c];
    if (diff > 0.0) {
      amount *= diff;
      any = true;
    }
  }
  return any ? amount : 0.0;
}

void truncate_archive(ParetoArchive& archive, int hard_limit) {
  // Greedy clustering: repeatedly drop the entry closest to its nearest
  // neighbor in normalized objective space.
  while (static_cast<int>(archive.size()) > hard_limit) {
    const auto& entries = archive.entries();
    std::vector<std::vector<double>> norm;
    norm.reserve(entries.size());
    for (const auto& e : entries) norm.push_back(archive.normalized(e.objectives));
    double min_d = std::numeric_limits<double>::infinity();
    std::size_t victim = 0;
    for (std::size_t i = 0; i < norm.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < norm.size(); ++j) {
        if (i == j) continue;
        double d2 = 0.0;
        for (std::size_t c = 0; c < norm[i].size(); ++c) {
          const double diff = norm[i][c] - norm[j][c];
          d2 += diff * diff;
        }
        nearest = std::min(nearest, d2);
      }
      if (nearest < min_d) {
        min_d = nearest;
        victim = i;
      }
    }
    archive.remove_at(victim);
  }
}

}  // namespace

OptResult amosa(const Design& initial, const AmosaConfig& config,
                const SearchSpace& space, EvalContext& ctx) {
  Rng rng(config.seed);
  if (ctx.reference.empty()) ctx.init_reference(space, rng.next());

  const auto t0 = std::chrono::steady_clock::now();
  OptResult result;
  result.archive = ParetoArchive(ctx.reference);

  Design current = initial;
  TrackedEval cur = eval_tracked(ctx, current);
  if (result.archive.insert(cur.id, cur.vec.components()) == InsertResult::Added)
    result.designs[cur.id] = current;

  // Initial temperature: scaled so sampled worsening moves are accepted with
  // probability close to one half.
  double delta_sum = 0.0;
  int delta_count = 0;
  for (int i = 0; i < 16 && (config.eval_budget <= 0 ||
                             ctx.evals < config.eval_budget); ++i) {
    Design cand = space.perturb(current, rng);
    TrackedEval ev = eval_tracked(ctx, cand);
    delta_sum += domination_amount(cur.vec.components(), ev.vec.components(),
                                   ctx.reference);
    ++delta_count;
    if (result.archive.insert(ev.id, ev.vec.components()) == InsertResult::Added)
      result.designs[ev.id] = cand;
  }
  double temperature =
      20.0 * std::max(delta_count ? delta_sum / delta_count : 0.0, 1e-12);

  long long next_checkpoint = config.checkpoint_every;
  long long record_index = 0;
  while ((config.eval_budget <= 0 || ctx.evals < config.eval_budget) &&
         temperature > config.t_min) {
    for (int it = 0; it < config.iters_per_temp; ++it) {
      if (config.eval_budget > 0 && ctx.evals >= config.eval_budget) break;
      Design cand = space.perturb(current, rng);
      TrackedEval ev = eval_tracked(ctx, cand);
      const std::vector<double> cv = cur.vec.components();
      const std::vector<double> nv = ev.vec.components();

      bool accept;
      if (dominates(nv, cv)) {
        accept = true;
      } else {
        // Average amount of domination over everything that dominates the
        // candidate (the current design and/or archive members).
        double sum = 0.0;
        int count = 0;
        if (dominates(cv, nv)) {
          sum += domination_amount(cv, nv, ctx.reference);
          ++count;
        }
        for (const auto& e : result.archive.entries()) {
          if (dominates(e.objectives, nv)) {
            sum += domination_amount(e.objectives, nv, ctx.reference);
            ++count;
          }
        }
        if (count == 0) {
          accept = true;
        } else {
          accept =
              rng.uniform() < amosa_acceptance(sum / count, temperature);
        }
      }

      if (accept) {
        if (result.archive.insert(ev.id, nv) == InsertResult::Added)
          result.designs[ev.id] = cand;
        current = std::move(cand);
        cur = std::move(ev);
        if (static_cast<int>(result.archive.size()) > config.soft_limit)
          truncate_archive(result.archive, config.hard_limit);
      }

      if (ctx.evals >= next_checkpoint) {
        result.runlog.push_back(
            RunRecord{++record_index, result.archive.hypervolume(),
                      static_cast<long long>(result.archive.size()), ctx.evals,
                      elapsed_ms(t0)});
        next_checkpoint += config.checkpoint_every;
      }
    }
    temperature *= config.cooling;
  }

  result.runlog.push_back(
      RunRecord{++record_index, result.archive.hypervolume(),
                static_cast<long long>(result.archive.size()), ctx.evals,
                elapsed_ms(t0)});

  // Keep only designs still present in the archive.
  std::map<std::string, Design> kept;
  for (const auto& e : result.archive.entries()) {
    auto it = result.designs.find(e.design_id);
    if (it != result.designs.end()) kept[e.design_id] = it->second;
  }
  result.designs = std::move(kept);
  result.evals = ctx.evals;
  return result;
}

}  // namespace hem3d
