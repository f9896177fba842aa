#pragma once
#include <string>
#include <vector>

namespace hem3d {

// Minimization dominance: a <= b componentwise with at least one strict.
// Throws std::invalid_argument on arity mismatch.
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Exact Lebesgue measure of the region dominated by `points` (minimization)
// and bounded above by `ref`, for 1 to 4 objectives. Coordinates at or
// beyond the reference contribute nothing.
double hypervolume_raw(const std::vector<std::vector<double>>& points,
                       const std::vector<double>& ref);

enum class InsertResult { Added, Dominated };

// Non-dominated set of (design id, objective vector) pairs with a fixed
// reference point. Hypervolume is computed on objectives normalized to
// [0, 1] against the reference; points beyond the reference are clamped
// for volume purposes but retained.
class ParetoArchive {
 public:
  struct Entry {
    std::string design_id;
    std::vector<double> objectives;
  };

  ParetoArchive() = default;
  explicit ParetoArchive(std::vector<double> reference);

  InsertResult insert(std::string design_id, std::vector<double> objectives);

  double hypervolume() const;
  // HV(archive + {v}) - HV(archive), without mutating the archive.
  double hypervolume_gain(const std::vector<double>& v) const;

  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<double>& reference() const { return reference_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void remove_at(std::size_t index);  // used by AMOSA archive truncation

  std::vector<double> normalized(const std::vector<double>& v) const;

 private:
  std::vector<Entry> entries_;
  std::vector<double> reference_;
};

}  // namespace hem3d
