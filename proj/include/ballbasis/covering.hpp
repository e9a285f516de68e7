#pragma once

#include <map>
#include <vector>

#include "ballbasis/basis.hpp"
#include "ballbasis/space.hpp"

namespace ballbasis {

/// Greedy Besicovitch selection: repeatedly take the largest-measure
/// candidate disjoint from everything chosen (ties: smallest id), until E is
/// covered by the hulls of the chosen balls or no candidate remains.
/// Postconditions (pairwise disjoint, E inside the hull union) are
/// re-verified before returning; failure carries the partial selection.
std::vector<int> besicovitch_select(const BallBasis& basis, const MeasurableSet& E,
                                    const std::vector<int>& candidate_ball_ids);

/// True iff some ball through x has mu(ball and E) > gamma mu(ball).
bool density_check(const BallBasis& basis, const MeasurableSet& E, int x, double gamma);

struct WellBalancedBall {
  int ball_id = -1;
  // Slack of each balance inequality (nonnegative when it holds):
  double slack_hull_lower = 0.0;  // mu(B* and F) - mu(B*)/(2 eta K)
  double slack_hull_upper = 0.0;  // mu(B*)/2 - mu(B* and F)
  double slack_ball_lower = 0.0;  // mu(B and F) - mu(B)/(2 eta)
  double slack_ball_upper = 0.0;  // mu(B)/2 - mu(B and F)
};

/// Well-balanced ball around a density point x of F (mu(F) < mu(X)/4,
/// doubling basis): take the largest ball through x at least half-filled by
/// F and its doubling witness; all four balance inequalities are re-verified.
WellBalancedBall well_balanced(const BallBasis& basis, const MeasurableSet& F, int x);

struct BalancedCover {
  std::vector<int> ball_ids;  // the B_k (hulls of the selected balls)
  MeasurableSet F;
  MeasurableSet Fprime;
  double sum_measure = 0.0;   // sum_k mu(B_k)
  double sum_bound = 0.0;     // 2 eta K mu(F)
  bool covers = false;        // F' inside the union of the B_k
  bool meets = false;         // every B_k meets F'
  bool sum_ok = false;        // sum_measure <= sum_bound
  std::vector<double> half_slack;  // per ball: mu(B_k)/2 - mu(B_k and F)
  bool half_ok = false;
};

/// Balanced covering of F' by hulls of well-balanced balls (atomized doubling
/// basis, mu(F) < mu(X)/4, F' a subset of F).  All three covering-lemma
/// inequalities are re-verified on the output.
BalancedCover balanced_cover(const BallBasis& basis, const MeasurableSet& F,
                             const MeasurableSet& Fprime);

struct CalderonNode {
  int ball_id = -1;
  MeasurableSet good_set;        // E_A, a subset of hull(A)
  std::vector<int> children;     // ball ids
  double osc_opt = 0.0;          // OSC_{A*,alpha}(f)
  double good_osc = 0.0;         // OSC_{E_A}(f) <= 2 osc_opt
  double child_sum = 0.0;        // sum of child measures
  double child_bound = 0.0;      // mu(A) / (4K)
  bool a21_ok = true;
  bool a17_ok = true;            // E_A meets every child's good set
};

struct CalderonTree {
  int root = -1;
  double alpha = 0.0;
  std::map<int, CalderonNode> nodes;
  std::vector<std::vector<int>> generations;  // generations[k] = U_k
  std::vector<MeasurableSet> delta_sets;      // Delta_k = union of balls in U_j, j >= k
  std::vector<double> delta_measure;
  double decay_constant = 0.0;  // max over k >= 1 of 4^k mu(Delta_k)/mu(B)
  bool all_a21 = true;
  bool all_a17 = true;

  int depth() const { return static_cast<int>(generations.size()) - 1; }
};

/// Default tree alpha: the smallest value for which the child-measure bound
/// and the good-set intersection argument are guaranteed, never below 3/4.
double calderon_default_alpha(const BallBasis& basis);

/// Generation structure of good sets and residuals for f over the ball with
/// the given id.  Requires a doubling atomized basis and alpha in (3/4, 1).
/// Good sets use the full factor-2 oscillation slack (largest value-window of
/// width twice the optimal oscillation), which keeps the bad sets small.
/// Terminates when a generation is empty; a ball recurring across
/// generations or more than 64 generations raises algorithm_failure.
CalderonTree calderon_tree(const BallBasis& basis, const RealFunction& f, int root_ball_id,
                           double alpha);

/// Largest violation of the chain telescoping bound
/// |f(x) - median(f, B)| <= 2 sum_j OSC_{hull(B_j), alpha}(f) over atoms of B
/// reached by the tree (negative or tiny values mean the bound holds).
double chain_bound_max_violation(const BallBasis& basis, const RealFunction& f,
                                 const CalderonTree& tree);

}  // namespace ballbasis
