#pragma once

#include <optional>
#include <vector>

#include "ballbasis/errors.hpp"

namespace ballbasis {

/// Sorted, duplicate-free collection of atom indices.  All set algebra stays
/// exact; measures are the only floating quantities in the library's base
/// layer.
class MeasurableSet {
 public:
  MeasurableSet() = default;

  /// Sorts and deduplicates.  Negative indices are rejected.
  static MeasurableSet from_indices(std::vector<int> indices);

  /// Contiguous index range [first, last], inclusive.
  static MeasurableSet range(int first, int last);

  static MeasurableSet single(int i) { return range(i, i); }
  static MeasurableSet full(int n) { return n > 0 ? range(0, n - 1) : MeasurableSet(); }

  const std::vector<int>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(int i) const;

  friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<int> members_;
};

MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_intersection(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet set_symmetric_difference(const MeasurableSet& a, const MeasurableSet& b);
bool is_subset(const MeasurableSet& a, const MeasurableSet& b);
bool intersects(const MeasurableSet& a, const MeasurableSet& b);

/// Finite weighted point space (X, mu): per-atom coordinate and a strictly
/// positive per-atom weight.  Immutable after construction.
class PointSpace {
 public:
  PointSpace(std::vector<double> coords, std::vector<double> mu);

  /// Uniform helper: n atoms at cell midpoints of [0,1), mu = 1/n each.
  static PointSpace uniform_unit(int n);

  int size() const { return static_cast<int>(mu_.size()); }
  double coord(int i) const { return coords_[static_cast<size_t>(i)]; }
  double mu(int i) const { return mu_[static_cast<size_t>(i)]; }
  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& weights() const { return mu_; }
  double total_measure() const { return total_; }

  /// mu(S).  Compensated summation; structural error on out-of-range index.
  double measure(const MeasurableSet& s) const;

 private:
  std::vector<double> coords_;
  std::vector<double> mu_;
  double total_ = 0.0;
};

/// Per-atom real values.  Length must match the space it is used with; the
/// operations that need the space check this.
struct RealFunction {
  std::vector<double> values;

  static RealFunction constant(int n, double c) {
    return RealFunction{std::vector<double>(static_cast<size_t>(n), c)};
  }
  int size() const { return static_cast<int>(values.size()); }
};

RealFunction abs_of(const RealFunction& f);
RealFunction add(const RealFunction& f, const RealFunction& g);
RealFunction scale(const RealFunction& f, double c);
/// f * indicator(S): values kept on S, zero elsewhere.
RealFunction restrict_to(const RealFunction& f, const MeasurableSet& s);

/// Nonnegative weight measure w, with optional certified A-infinity
/// parameters (set by the weights module checker).
class WeightMeasure {
 public:
  explicit WeightMeasure(std::vector<double> w);

  int size() const { return static_cast<int>(w_.size()); }
  double w(int i) const { return w_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return w_; }
  double sum(const MeasurableSet& s) const;
  double total() const { return total_; }

  std::optional<double> gamma;
  std::optional<double> delta;

 private:
  std::vector<double> w_;
  double total_ = 0.0;
};

enum class LevelMode { abs_gt, gt, lt };

/// {i : |f_i| > lambda}, {i : f_i > lambda} or {i : f_i < lambda}.
MeasurableSet superlevel_set(const RealFunction& f, double lambda, LevelMode mode);

/// (sum_i |f_i|^p w_i)^(1/p); parameter error when p <= 0.
double lp_norm(const RealFunction& f, double p, const WeightMeasure& w);

}  // namespace ballbasis
