// Independent brute-force oracles used by the tests.  Everything here
// enumerates subsets directly from the definitions and must stay decoupled
// from the library's algorithmic shortcuts.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ballbasis/rng.hpp"
#include "ballbasis/space.hpp"
#include "ballbasis/util.hpp"

namespace oracles {

using ballbasis::CompensatedSum;
using ballbasis::MeasurableSet;
using ballbasis::PointSpace;
using ballbasis::RealFunction;
using ballbasis::RngStream;
using ballbasis::WeightMeasure;

inline double subset_measure(const PointSpace& space, const std::vector<int>& atoms,
                             unsigned mask) {
  CompensatedSum acc;
  for (size_t k = 0; k < atoms.size(); ++k) {
    if (mask & (1u << k)) acc.add(space.mu(atoms[k]));
  }
  return acc.value();
}

/// Minimum oscillation over all subsets E of B with mu(E) >= alpha mu(B).
inline double brute_osc_alpha(const PointSpace& space, const RealFunction& f,
                              const MeasurableSet& B, double alpha) {
  const auto& atoms = B.members();
  const double target = alpha * space.measure(B);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << atoms.size()); ++mask) {
    if (subset_measure(space, atoms, mask) < target) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (mask & (1u << k)) {
        lo = std::min(lo, f.values[(size_t)atoms[k]]);
        hi = std::max(hi, f.values[(size_t)atoms[k]]);
      }
    }
    best = std::min(best, hi - lo);
  }
  return best;
}

/// Minimum of ||g||_{L^inf(E)} over subsets E of B with mu(E) >= alpha mu(B).
inline double brute_inf_alpha(const PointSpace& space, const RealFunction& g,
                              const MeasurableSet& B, double alpha) {
  const auto& atoms = B.members();
  const double target = alpha * space.measure(B);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << atoms.size()); ++mask) {
    if (subset_measure(space, atoms, mask) < target) continue;
    double hi = 0.0;
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (mask & (1u << k)) hi = std::max(hi, std::abs(g.values[(size_t)atoms[k]]));
    }
    best = std::min(best, hi);
  }
  return best;
}

/// Smallest attained value m with mu{f > m} <= mu(B)/2 and mu{f < m} <= mu(B)/2,
/// checking both superlevel conditions directly per candidate.
inline double brute_median(const PointSpace& space, const RealFunction& f,
                           const MeasurableSet& B) {
  const double half = space.measure(B) / 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (int i : B.members()) {
    const double m = f.values[(size_t)i];
    CompensatedSum above, below;
    for (int j : B.members()) {
      if (f.values[(size_t)j] > m) above.add(space.mu(j));
      if (f.values[(size_t)j] < m) below.add(space.mu(j));
    }
    if (above.value() <= half && below.value() <= half) best = std::min(best, m);
  }
  return best;
}

/// Worst-case gamma over all subsets of the ball for the A-infinity ratio.
inline double brute_ainfty_gamma_for_ball(const PointSpace& space, const WeightMeasure& w,
                                          const MeasurableSet& B, double delta) {
  const auto& atoms = B.members();
  const double muB = space.measure(B);
  const double wB = w.sum(B);
  double gamma = 0.0;
  for (unsigned mask = 1; mask < (1u << atoms.size()); ++mask) {
    CompensatedSum wE, muE;
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (mask & (1u << k)) {
        wE.add(w.w(atoms[k]));
        muE.add(space.mu(atoms[k]));
      }
    }
    gamma = std::max(gamma, (wE.value() / wB) / std::pow(muE.value() / muB, delta));
  }
  return gamma;
}

/// Random space with dyadic-rational weights k/64 so that every measure sum
/// is exact in double precision.
inline PointSpace random_small_space(RngStream& rng, int max_atoms = 12) {
  const int n = rng.next_int(1, max_atoms);
  std::vector<double> coords(static_cast<size_t>(n)), mu(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    coords[(size_t)i] = i + 0.5;
    mu[(size_t)i] = rng.next_int(1, 64) / 64.0;
  }
  return PointSpace(std::move(coords), std::move(mu));
}

inline RealFunction random_function(RngStream& rng, int n) {
  RealFunction f = RealFunction::constant(n, 0.0);
  for (int i = 0; i < n; ++i) f.values[(size_t)i] = rng.next_gaussian();
  return f;
}

inline MeasurableSet random_subset(RngStream& rng, const MeasurableSet& of) {
  std::vector<int> out;
  for (int i : of.members()) {
    if (rng.next_unit() < 0.5) out.push_back(i);
  }
  return MeasurableSet::from_indices(std::move(out));
}

}  // namespace oracles
