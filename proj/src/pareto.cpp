#include "hem3d/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hem3d {

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dominates: arity mismatch");
  bool strict = false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] > b[c]) return false;
    if (a[c] < b[c]) strict = true;
  }
  return strict;
}

namespace {

// Keep only points strictly below the reference in some dimension and not
// dominated by another point; clamp at the reference.
std::vector<std::vector<double>> prune(
    std::vector<std::vector<double>> pts, const std::vector<double>& ref) {
  for (auto& p : pts)
    for (std::size_t c = 0; c < ref.size(); ++c) p[c] = std::min(p[c], ref[c]);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool keep = true;
    for (std::size_t c = 0; c < ref.size() && keep; ++c)
      if (pts[i][c] >= ref[c]) keep = false;  // zero extent in dim c
    for (std::size_t j = 0; j < pts.size() && keep; ++j) {
      if (i == j) continue;
      if (dominates(pts[j], pts[i]) || (j < i && pts[j] == pts[i]))
        keep = false;
    }
    if (keep) out.push_back(pts[i]);
  }
  return out;
}

double hv2(std::vector<std::vector<double>> pts, double rx, double ry) {
  // Staircase sweep over points sorted by x ascending.
  std::sort(pts.begin(), pts.end());
  double area = 0.0, prev_y = ry;
  for (const auto& p : pts) {
    if (p[1] < prev_y) {
      area += (rx - p[0]) * (prev_y - p[1]);
      prev_y = p[1];
    }
  }
  return area;
}

double hv_rec(const std::vector<std::vector<double>>& pts,
              const std::vector<double>& ref, std::size_t d) {
  if (pts.empty()) return 0.0;
  if (d == 1) {
    double lo = ref[0];
    for (const auto& p : pts) lo = std::min(lo, p[0]);
    return ref[0] - lo;
  }
  if (d == 2) {
    auto copy = pts;
    return hv2(std::move(copy), ref[0], ref[1]);
  }
  // Slice along the last dimension.
  std::vector<double> levels;
  levels.reserve(pts.size());
  for (const auto& p : pts) levels.push_back(p[d - 1]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  double volume = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double z0 = levels[k];
    const double z1 = k + 1 < levels.size() ? levels[k + 1] : ref[d - 1];
    if (z1 <= z0) continue;
    std::vector<std::vector<double>> slice;
    for (const auto& p : pts)
      if (p[d - 1] <= z0)
        slice.emplace_back(p.begin(), p.begin() + static_cast<long>(d - 1));
    volume += (z1 - z0) * hv_rec(slice, ref, d - 1);
  }
  return volume;
}

}  // namespace

double hypervolume_raw(const std::vector<std::vector<double>>& points,
                       const std::vector<double>& ref) {
  const std::size_t d = ref.size();
  if (d < 1 || d > 4)
    throw std::invalid_argument("hypervolume supports 1 to 4 objectives");
  for (const auto& p : points)
    if (p.size() != d)
      throw std::invalid_argument("hypervolume: point arity mismatch");
  return hv_rec(prune(points, ref), ref, d);
}

ParetoArchive::ParetoArchive(std::vector<double> reference)
    : reference_(std::move(reference)) {
  for (double r : reference_)
    if (!(r > 0.0))
      throw std::invalid_argument("reference components must be positive");
}

std::vector<double> ParetoArchive::normalized(
    const std::vector<double>& v) const {
  if (v.size() != reference_.size())
    throw std::invalid_argument("archive arity mismatch");
  std::vector<double> n(v.size());
  for (std::size_t c = 0; c < v.size(); ++c)
    n[c] = std::min(v[c] / reference_[c], 1.0);
  return n;
}

InsertResult ParetoArchive::insert(std::string design_id,
                                   std::vector<double> objectives) {
  if (objectives.size() != reference_.size())
    throw std::invalid_argument("archive arity mismatch");
  for (const Entry& e : entries_)
    if (e.objectives == objectives || dominates(e.objectives, objectives))
      return InsertResult::Dominated;
  std::erase_if(entries_,
                [&](const Entry& e) { return dominates(objectives, e.objectives); });
  entries_.push_back(Entry{std::move(design_id), std::move(objectives)});
  return InsertResult::Added;
}

void ParetoArchive::remove_at(std::size_t index) {
  entries_.erase(entries_.begin() + static_cast<long>(index));
}

double ParetoArchive::hypervolume() const {
  if (entries_.empty()) return 0.0;
  std::vector<std::vector<double>> pts;
  pts.reserve(entries_.size());
  for (const Entry& e : entries_) pts.push_back(normalized(e.objectives));
  return hypervolume_raw(pts, std::vector<double>(reference_.size(), 1.0));
}

double ParetoArchive::hypervolume_gain(const std::vector<double>& v) const {
  const std::vector<double> vn = normalized(v);
  const std::size_t d = vn.size();
  double box = 1.0;
  for (double c : vn) box *= (1.0 - c);
  if (box <= 0.0) return 0.0;

  // Exclusive contribution: the box below v minus the part already covered.
  // Each archive point is clipped into v's box; the clipped set is usually
  // tiny, which keeps per-neighbor scoring cheap inside the optimizer.
  std::vector<std::vector<double>> clipped;
  for (const Entry& e : entries_) {
    std::vector<double> en = normalized(e.objectives);
    bool covers = true;
    for (std::size_t c = 0; c < d; ++c)
      if (en[c] > vn[c]) covers = false;
    if (covers) return 0.0;  // v is dominated (or equal); adds nothing
    for (std::size_t c = 0; c < d; ++c) en[c] = std::max(en[c], vn[c]);
    clipped.push_back(std::move(en));
  }
  return box -
         hypervolume_raw(clipped, std::vector<double>(d, 1.0));
}

}  // namespace hem3d
