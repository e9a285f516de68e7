#include "ballbasis/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ballbasis/util.hpp"

namespace ballbasis {

namespace {

struct ValueAtom {
  double value;
  int atom;
  double mu;
};

std::vector<ValueAtom> sorted_by_value(const PointSpace& space, const RealFunction& f,
                                       const MeasurableSet& B) {
  std::vector<ValueAtom> v;
  v.reserve(B.members().size());
  for (int i : B.members()) {
    if (i >= f.size() || i >= space.size()) throw structural_error("index out of range");
    v.push_back({f.values[static_cast<size_t>(i)], i, space.mu(i)});
  }
  std::sort(v.begin(), v.end(), [](const ValueAtom& a, const ValueAtom& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.atom < b.atom;
  });
  return v;
}

void check_function(const RealFunction& f, const PointSpace& space) {
  if (f.size() != space.size()) throw structural_error("function length mismatch");
}

}  // namespace

double osc(const RealFunction& f, const MeasurableSet& E) {
  if (E.empty()) throw domain_error("oscillation of an empty set");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i : E.members()) {
    if (i >= f.size()) throw structural_error("index out of range");
    lo = std::min(lo, f.values[static_cast<size_t>(i)]);
    hi = std::max(hi, f.values[static_cast<size_t>(i)]);
  }
  return hi - lo;
}

OscAlphaResult osc_alpha(const PointSpace& space, const RealFunction& f,
                         const MeasurableSet& B, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha must be in (0,1)");
  if (B.empty()) throw domain_error("osc_alpha over empty ball");
  check_function(f, space);
  const auto v = sorted_by_value(space, f, B);
  const double target = alpha * space.measure(B);

  // Two pointers over the sorted values: for each left end, the shortest
  // admissible window; keep the narrowest value range.
  double best = std::numeric_limits<double>::infinity();
  size_t best_lo = 0, best_hi = 0;
  size_t lo = 0;
  CompensatedSum win;
  size_t hi = 0;
  double win_val = 0.0;
  for (lo = 0; lo < v.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      win = CompensatedSum();
      win_val = 0.0;
    }
    while (win_val < target && hi < v.size()) {
      win.add(v[hi].mu);
      win_val = win.value();
      ++hi;
    }
    if (win_val < target) break;  // no admissible window starts here or later
    const double spread = v[hi - 1].value - v[lo].value;
    if (spread < best) {
      best = spread;
      best_lo = lo;
      best_hi = hi - 1;
    }
    win.add(-v[lo].mu);
    win_val = win.value();
  }
  if (!std::isfinite(best)) {
    // alpha * mu(B) can exceed every partial sum only through summation slack;
    // the full ball is always admissible.
    best = v.back().value - v.front().value;
    best_lo = 0;
    best_hi = v.size() - 1;
  }

  OscAlphaResult res;
  res.value = best;
  // Close the window: take every atom of B whose value lies in the range.
  std::vector<int> wit;
  const double vlo = v[best_lo].value, vhi = v[best_hi].value;
  for (const auto& a : v) {
    if (a.value >= vlo && a.value <= vhi) wit.push_back(a.atom);
  }
  res.witness = MeasurableSet::from_indices(std::move(wit));
  return res;
}

MeasurableSet widest_window_subset(const PointSpace& space, const RealFunction& f,
                                   const MeasurableSet& B, double width) {
  if (B.empty()) throw domain_error("window over empty ball");
  check_function(f, space);
  const auto v = sorted_by_value(space, f, B);
  double best_mass = -1.0;
  size_t best_lo = 0, best_hi = 0;
  size_t hi = 0;
  CompensatedSum win;
  for (size_t lo = 0; lo < v.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      win = CompensatedSum();
    }
    while (hi < v.size() && v[hi].value - v[lo].value <= width) {
      win.add(v[hi].mu);
      ++hi;
    }
    if (win.value() > best_mass) {
      best_mass = win.value();
      best_lo = lo;
      best_hi = hi - 1;
    }
    win.add(-v[lo].mu);
  }
  std::vector<int> wit;
  for (size_t k = best_lo; k <= best_hi; ++k) wit.push_back(v[k].atom);
  return MeasurableSet::from_indices(std::move(wit));
}

double inf_alpha(const PointSpace& space, const RealFunction& g, const MeasurableSet& B,
                 double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw parameter_error("alpha must be in (0,1]");
  if (B.empty()) throw domain_error("inf_alpha over empty ball");
  check_function(g, space);
  auto v = sorted_by_value(space, abs_of(g), B);
  const double target = alpha * space.measure(B);
  CompensatedSum acc;
  for (const auto& a : v) {
    acc.add(a.mu);
    if (acc.value() >= target) return a.value;
  }
  return v.back().value;  // summation slack: the full ball always qualifies
}

double inf_ball(const RealFunction& g, const MeasurableSet& B) {
  if (B.empty()) throw domain_error("inf over empty ball");
  double lo = std::numeric_limits<double>::infinity();
  for (int i : B.members()) {
    if (i >= g.size()) throw structural_error("index out of range");
    lo = std::min(lo, std::abs(g.values[static_cast<size_t>(i)]));
  }
  return lo;
}

double median(const PointSpace& space, const RealFunction& f, const MeasurableSet& B) {
  if (B.empty()) throw domain_error("median over empty ball");
  check_function(f, space);
  const auto v = sorted_by_value(space, f, B);
  const double half = space.measure(B) / 2.0;
  // Prefix masses over the sorted values give mu{f < m} and mu{f > m} for
  // every attained candidate m; return the smallest one satisfying both.
  size_t k = 0;
  CompensatedSum below;
  while (k < v.size()) {
    const double m = v[k].value;
    CompensatedSum tied;
    size_t j = k;
    while (j < v.size() && v[j].value == m) {
      tied.add(v[j].mu);
      ++j;
    }
    const double mu_below = below.value();
    const double mu_above = space.measure(B) - mu_below - tied.value();
    if (mu_below <= half && mu_above <= half) return m;
    below.add(tied.value());
    k = j;
  }
  return v.back().value;  // unreachable for exact arithmetic
}

double avg(const PointSpace& space, const RealFunction& f, const MeasurableSet& B, double r) {
  if (!(r >= 1.0)) throw parameter_error("exponent r must be >= 1");
  if (B.empty()) throw domain_error("average over empty ball");
  check_function(f, space);
  CompensatedSum acc;
  for (int i : B.members()) {
    acc.add(std::pow(std::abs(f.values[static_cast<size_t>(i)]), r) * space.mu(i));
  }
  return std::pow(acc.value() / space.measure(B), 1.0 / r);
}

double plain_mean(const PointSpace& space, const RealFunction& f, const MeasurableSet& B) {
  if (B.empty()) throw domain_error("mean over empty ball");
  check_function(f, space);
  CompensatedSum acc;
  for (int i : B.members()) acc.add(f.values[static_cast<size_t>(i)] * space.mu(i));
  return acc.value() / space.measure(B);
}

double sharp_avg(const PointSpace& space, const RealFunction& f, const MeasurableSet& B,
                 double r) {
  if (!(r >= 1.0)) throw parameter_error("exponent r must be >= 1");
  const double mean = plain_mean(space, f, B);
  CompensatedSum acc;
  for (int i : B.members()) {
    acc.add(std::pow(std::abs(f.values[static_cast<size_t>(i)] - mean), r) * space.mu(i));
  }
  return std::pow(acc.value() / space.measure(B), 1.0 / r);
}

double starred_avg(const BallBasis& basis, const RealFunction& f, const MeasurableSet& B,
                   double r) {
  double best = 0.0;
  for (int id : basis.superset_ball_ids(B)) {
    best = std::max(best, avg(basis.space(), f, basis.ball(id).members, r));
  }
  return best;
}

double starred_sharp(const BallBasis& basis, const RealFunction& f, const MeasurableSet& B,
                     double r) {
  double best = 0.0;
  for (int id : basis.superset_ball_ids(B)) {
    best = std::max(best, sharp_avg(basis.space(), f, basis.ball(id).members, r));
  }
  return best;
}

namespace {

template <class PerBall>
RealFunction scatter_max(const BallBasis& basis, PerBall&& value_of) {
  RealFunction out = RealFunction::constant(basis.space().size(), 0.0);
  for (const auto& b : basis.balls()) {
    const double v = value_of(b);
    for (int i : b.members.members()) {
      double& slot = out.values[static_cast<size_t>(i)];
      slot = std::max(slot, v);
    }
  }
  return out;
}

}  // namespace

RealFunction maximal(const BallBasis& basis, const RealFunction& f, double r) {
  return scatter_max(basis,
                     [&](const Ball& b) { return avg(basis.space(), f, b.members, r); });
}

RealFunction sharp_maximal(const BallBasis& basis, const RealFunction& f, double r) {
  return scatter_max(
      basis, [&](const Ball& b) { return sharp_avg(basis.space(), f, b.members, r); });
}

RealFunction local_sharp_maximal(const BallBasis& basis, const RealFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha must be in (0,1)");
  return scatter_max(basis, [&](const Ball& b) {
    return osc_alpha(basis.space(), f, b.members, alpha).value;
  });
}

}  // namespace ballbasis
