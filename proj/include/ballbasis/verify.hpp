#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ballbasis/basis.hpp"
#include "ballbasis/operators.hpp"
#include "ballbasis/space.hpp"

namespace ballbasis {

enum class DominationMode { weak, strong };

/// Per-alpha smallest beta with OSC_{B,alpha}(f) <= beta * INF-term(g) over
/// all balls.  infinity marks an infeasible alpha (some ball needs a positive
/// oscillation against a vanishing denominator).
struct DominationProfile {
  std::vector<double> alphas;
  std::vector<double> beta;
  std::vector<int> witness_ball;  // tightest ball per alpha, -1 when beta = 0
  DominationMode mode = DominationMode::weak;
  bool feasible() const {
    for (double b : beta) {
      if (!std::isfinite(b)) return false;
    }
    return true;
  }
};

DominationProfile domination_profile(const BallBasis& basis, const RealFunction& f,
                                     const RealFunction& g, DominationMode mode,
                                     const std::vector<double>& alpha_grid);

struct GoodLambdaReport {
  std::vector<double> lambdas;
  std::vector<double> lhs;    // w{|f| > 2 lambda, |g| <= lambda/beta}
  std::vector<double> rhs;    // w{|f| > lambda}
  std::vector<double> ratio;  // lhs/rhs, 0 when rhs = 0
  double alpha = 0.0, beta = 0.0;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double max_ratio = 0.0;
  double fitted_constant = 0.0;  // max_ratio / (gamma (1-alpha)^delta), when certified
  bool inclusion_ok = true;      // the lhs set sat inside the rhs set at every lambda
};

/// Theorem-shaped good-lambda table.  Uses the w-measure on both sides (the
/// proof's form); pass w = mu for the plain-measure version.
GoodLambdaReport good_lambda_report(const BallBasis& basis, const RealFunction& f,
                                    const RealFunction& g, const WeightMeasure& w,
                                    double alpha, double beta,
                                    const std::vector<double>& lambda_grid);

enum class TailKind {
  centered,  // mu{x in B : |f - median(f,B)| > t |g|}
  plain      // mu{x in B : |f| > t |g|}
};

struct ExpTailReport {
  std::vector<double> ts;
  std::vector<double> tail;  // normalized by mu(B)
  double C = 0.0;            // envelope C e^{-c t}
  double c = 0.0;
  double r2 = 0.0;
  int fit_points = 0;
  bool certified = false;  // r2 >= 0.9 over >= 5 points with c > 0
  bool degenerate = false; // tail identically zero (c = +infinity symbolically)
};

ExpTailReport exp_tail_report(const BallBasis& basis, const RealFunction& f,
                              const RealFunction& g, const MeasurableSet& B,
                              const std::vector<double>& t_grid,
                              TailKind kind = TailKind::centered);

/// Data-driven default grid for t: logarithmic, 64 points spanning the
/// nonzero range of the tail ratios |f - median| / |g| (or |f|/|g|).
std::vector<double> default_t_grid(const BallBasis& basis, const RealFunction& f,
                                   const RealFunction& g, const MeasurableSet& B,
                                   TailKind kind = TailKind::centered, int points = 64);

/// Logarithmic 64-point lambda grid over [5% nonzero quantile of |f|, max |f|].
std::vector<double> default_lambda_grid(const RealFunction& f, int points = 64);

struct BoGoodLambdaReport {
  std::vector<double> eps;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> ratio;  // [eps][lambda]
  std::vector<double> max_ratio;           // per eps, over lambdas with rhs > 0
  std::vector<bool> eps_flagged;           // above the operator threshold eps_T
  double eps_threshold = std::numeric_limits<double>::infinity();
  double c = 0.0;   // fit of max_ratio ~ c_T e^{-c/eps}
  double c_T = 0.0;
  double r2 = 0.0;
  int fit_points = 0;
  bool certified = false;
  bool monotone = true;  // max_ratio nondecreasing in eps (set inclusion)
};

/// Operator-against-maximal good-lambda table
/// mu{|Tf| > lambda, Mf <= eps lambda} vs mu{|Tf| > lambda}, following the
/// finite-measure branch through the full-space hull when needed.  Requires
/// localization and weak-norm estimates on the operator spec; eps beyond
/// min(1/(3 hat L), 1/(9 hat W)) are tabulated but flagged out of the fit.
BoGoodLambdaReport good_lambda_bo(const OperatorSpec& op, const RealFunction& f,
                                  const BallBasis& basis, const std::vector<double>& eps_grid,
                                  const std::vector<double>& lambda_grid);

struct NormComparison {
  std::vector<double> ps;
  std::vector<double> ratio;  // ||f||_{L^p(w)} / ||g||_{L^p(w)}
};

NormComparison norm_comparison(const RealFunction& f, const RealFunction& g,
                               const WeightMeasure& w, const std::vector<double>& p_grid);

enum class SharpDenominator {
  starred_sharp,   // <f>*_{#,B}
  inf_sharp_max    // INF_B(M_# f)
};

/// Sharp-domination profile: C(alpha) = max over balls of
/// OSC_{B,alpha}(Mf) / ((1-alpha)^{-1/r} denom(B)); balls with vanishing
/// denominator are skipped.  Boundedness of the profile is the theorem shape.
DominationProfile sharp_domination_check(const BallBasis& basis, const RealFunction& f,
                                         double r, const std::vector<double>& alpha_grid,
                                         SharpDenominator den = SharpDenominator::starred_sharp);

}  // namespace ballbasis
