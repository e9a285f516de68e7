#pragma once

#include "ballbasis/basis.hpp"
#include "ballbasis/space.hpp"

namespace ballbasis {

/// max f - min f over E; domain error when E is empty.
double osc(const RealFunction& f, const MeasurableSet& E);

struct OscAlphaResult {
  double value = 0.0;
  MeasurableSet witness;  // subset of B attaining the minimum oscillation
};

/// Minimal oscillation over subsets E of B carrying at least alpha of B's
/// measure.  The optimum is attained on a value-window; a sliding window over
/// the sorted values finds it in O(|B| log |B|).  The witness is the full
/// window (all atoms of B whose values lie in the optimal range).
OscAlphaResult osc_alpha(const PointSpace& space, const RealFunction& f,
                         const MeasurableSet& B, double alpha);

/// Largest-measure subset of B whose oscillation does not exceed `width`,
/// realized as a value-window of that width.  Used by the tree construction,
/// which is allowed twice the optimal oscillation for its good sets.
MeasurableSet widest_window_subset(const PointSpace& space, const RealFunction& f,
                                   const MeasurableSet& B, double width);

/// Weighted lower alpha-quantile of |g| on B: the smallest attained value t
/// with mu{ i in B : |g_i| <= t } >= alpha mu(B).  alpha in (0, 1].
double inf_alpha(const PointSpace& space, const RealFunction& g, const MeasurableSet& B,
                 double alpha);

/// min |g| over B.
double inf_ball(const RealFunction& g, const MeasurableSet& B);

/// Smallest attained value m with mu{f > m} <= mu(B)/2 and mu{f < m} <= mu(B)/2.
double median(const PointSpace& space, const RealFunction& f, const MeasurableSet& B);

/// ((1/mu(B)) int_B |f|^r)^(1/r); r >= 1.
double avg(const PointSpace& space, const RealFunction& f, const MeasurableSet& B, double r);

/// Plain mu-average of f over B (signed).
double plain_mean(const PointSpace& space, const RealFunction& f, const MeasurableSet& B);

/// ((1/mu(B)) int_B |f - f_B|^r)^(1/r) with f_B the plain average.
double sharp_avg(const PointSpace& space, const RealFunction& f, const MeasurableSet& B,
                 double r);

/// sup over basis balls A containing B of avg(f, A, r).
double starred_avg(const BallBasis& basis, const RealFunction& f, const MeasurableSet& B,
                   double r);

/// sup over basis balls A containing B of sharp_avg(f, A, r).
double starred_sharp(const BallBasis& basis, const RealFunction& f, const MeasurableSet& B,
                     double r);

/// Mf(x) = sup over balls B containing x of avg(f, B, r).
RealFunction maximal(const BallBasis& basis, const RealFunction& f, double r);

/// M#f(x) = sup over balls B containing x of sharp_avg(f, B, r).
RealFunction sharp_maximal(const BallBasis& basis, const RealFunction& f, double r);

/// Local sharp maximal: sup over balls B containing x of OSC_{B,alpha}(f).
RealFunction local_sharp_maximal(const BallBasis& basis, const RealFunction& f, double alpha);

}  // namespace ballbasis
