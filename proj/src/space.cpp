#include "ballbasis/space.hpp"

#include <algorithm>
#include <cmath>

#include "ballbasis/util.hpp"

namespace ballbasis {

MeasurableSet MeasurableSet::from_indices(std::vector<int> indices) {
  for (int i : indices) {
    if (i < 0) throw structural_error("negative atom index");
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  MeasurableSet s;
  s.members_ = std::move(indices);
  return s;
}

MeasurableSet MeasurableSet::range(int first, int last) {
  if (first < 0 || last < first) throw structural_error("bad index range");
  MeasurableSet s;
  s.members_.reserve(static_cast<size_t>(last - first + 1));
  for (int i = first; i <= last; ++i) s.members_.push_back(i);
  return s;
}

bool MeasurableSet::contains(int i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

MeasurableSet set_union(const MeasurableSet& a, const MeasurableSet& b) {
  MeasurableSet out;
  std::vector<int> m;
  m.reserve(a.members().size() + b.members().size());
  std::set_union(a.members().begin(), a.members().end(), b.members().begin(),
                 b.members().end(), std::back_inserter(m));
  return MeasurableSet::from_indices(std::move(m));
}

MeasurableSet set_intersection(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<int> m;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(),
                        b.members().end(), std::back_inserter(m));
  return MeasurableSet::from_indices(std::move(m));
}

MeasurableSet set_difference(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<int> m;
  std::set_difference(a.members().begin(), a.members().end(), b.members().begin(),
                      b.members().end(), std::back_inserter(m));
  return MeasurableSet::from_indices(std::move(m));
}

MeasurableSet set_symmetric_difference(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<int> m;
  std::set_symmetric_difference(a.members().begin(), a.members().end(),
                                b.members().begin(), b.members().end(),
                                std::back_inserter(m));
  return MeasurableSet::from_indices(std::move(m));
}

bool is_subset(const MeasurableSet& a, const MeasurableSet& b) {
  return std::includes(b.members().begin(), b.members().end(), a.members().begin(),
                       a.members().end());
}

bool intersects(const MeasurableSet& a, const MeasurableSet& b) {
  auto ia = a.members().begin();
  auto ib = b.members().begin();
  while (ia != a.members().end() && ib != b.members().end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

PointSpace::PointSpace(std::vector<double> coords, std::vector<double> mu)
    : coords_(std::move(coords)), mu_(std::move(mu)) {
  if (mu_.empty()) throw structural_error("point space needs at least one atom");
  if (coords_.size() != mu_.size()) {
    throw structural_error("coords and mu must have equal length");
  }
  CompensatedSum acc;
  for (double m : mu_) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw structural_error("atom weights must be finite and strictly positive");
    }
    acc.add(m);
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw structural_error("atom coordinates must be finite");
  }
  total_ = acc.value();
}

PointSpace PointSpace::uniform_unit(int n) {
  if (n < 1) throw structural_error("need n >= 1 atoms");
  std::vector<double> coords(static_cast<size_t>(n));
  std::vector<double> mu(static_cast<size_t>(n), 1.0 / n);
  for (int i = 0; i < n; ++i) coords[static_cast<size_t>(i)] = (i + 0.5) / n;
  return PointSpace(std::move(coords), std::move(mu));
}

double PointSpace::measure(const MeasurableSet& s) const {
  CompensatedSum acc;
  for (int i : s.members()) {
    if (i >= size()) throw structural_error("atom index out of range");
    acc.add(mu_[static_cast<size_t>(i)]);
  }
  return acc.value();
}

RealFunction abs_of(const RealFunction& f) {
  RealFunction g = f;
  for (double& v : g.values) v = std::abs(v);
  return g;
}

RealFunction add(const RealFunction& f, const RealFunction& g) {
  if (f.values.size() != g.values.size()) {
    throw structural_error("function length mismatch");
  }
  RealFunction h = f;
  for (size_t i = 0; i < h.values.size(); ++i) h.values[i] += g.values[i];
  return h;
}

RealFunction scale(const RealFunction& f, double c) {
  RealFunction g = f;
  for (double& v : g.values) v *= c;
  return g;
}

RealFunction restrict_to(const RealFunction& f, const MeasurableSet& s) {
  RealFunction g = RealFunction::constant(f.size(), 0.0);
  for (int i : s.members()) {
    if (i >= f.size()) throw structural_error("atom index out of range");
    g.values[static_cast<size_t>(i)] = f.values[static_cast<size_t>(i)];
  }
  return g;
}

WeightMeasure::WeightMeasure(std::vector<double> w) : w_(std::move(w)) {
  CompensatedSum acc;
  for (double x : w_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw structural_error("weight values must be finite and nonnegative");
    }
    acc.add(x);
  }
  total_ = acc.value();
}

double WeightMeasure::sum(const MeasurableSet& s) const {
  CompensatedSum acc;
  for (int i : s.members()) {
    if (i >= size()) throw structural_error("atom index out of range");
    acc.add(w_[static_cast<size_t>(i)]);
  }
  return acc.value();
}

MeasurableSet superlevel_set(const RealFunction& f, double lambda, LevelMode mode) {
  std::vector<int> m;
  for (int i = 0; i < f.size(); ++i) {
    const double v = f.values[static_cast<size_t>(i)];
    bool in = false;
    switch (mode) {
      case LevelMode::abs_gt: in = std::abs(v) > lambda; break;
      case LevelMode::gt: in = v > lambda; break;
      case LevelMode::lt: in = v < lambda; break;
    }
    if (in) m.push_back(i);
  }
  return MeasurableSet::from_indices(std::move(m));
}

double lp_norm(const RealFunction& f, double p, const WeightMeasure& w) {
  if (!(p > 0.0)) throw parameter_error("lp_norm requires p > 0");
  if (f.size() != w.size()) throw structural_error("function/weight length mismatch");
  CompensatedSum acc;
  for (size_t i = 0; i < f.values.size(); ++i) {
    acc.add(std::pow(std::abs(f.values[i]), p) * w.values()[i]);
  }
  return std::pow(acc.value(), 1.0 / p);
}

}  // namespace ballbasis
