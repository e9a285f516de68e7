#pragma once

#include "ballbasis/basis.hpp"
#include "ballbasis/space.hpp"

namespace ballbasis {

struct AinftyReport {
  bool pass = false;
  double gamma = 0.0;
  double delta = 0.0;
  int worst_ball = -1;
  MeasurableSet worst_subset;  // density-greedy prefix maximizing the ratio
};

/// Certifies w(E)/w(B) <= gamma (mu(E)/mu(B))^delta over all balls B and
/// subsets E of B.  For each ball, subsets are reduced to density-sorted
/// prefixes: for delta <= 1 the prefix family is extremal for the ratio, so
/// the sweep is exact at O(|B| log |B|) per ball instead of 2^|B|.
AinftyReport ainfty_check(const WeightMeasure& w, const BallBasis& basis, double delta);

enum class WeightKind { lebesgue, power, atomic };

/// lebesgue: w = mu.  power: w_i = |x_i|^a mu_i (a > -1).  atomic: mu plus a
/// point mass at one atom.
WeightMeasure make_weight(WeightKind kind, const PointSpace& space, double power_exponent = 0.0,
                          int atom = 0, double mass = 0.0);

}  // namespace ballbasis
