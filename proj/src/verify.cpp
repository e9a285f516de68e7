#include "ballbasis/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ballbasis/functionals.hpp"
#include "ballbasis/util.hpp"

namespace ballbasis {

DominationProfile domination_profile(const BallBasis& basis, const RealFunction& f,
                                     const RealFunction& g, DominationMode mode,
                                     const std::vector<double>& alpha_grid) {
  DominationProfile prof;
  prof.mode = mode;
  const PointSpace& space = basis.space();
  for (double alpha : alpha_grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha grid must lie in (0,1)");
    double beta = 0.0;
    int witness = -1;
    for (const auto& b : basis.balls()) {
      const double num = osc_alpha(space, f, b.members, alpha).value;
      if (num == 0.0) continue;
      const double den = mode == DominationMode::weak
                             ? inf_alpha(space, g, b.members, 1.0 - alpha)
                             : inf_ball(g, b.members);
      if (den == 0.0) {
        beta = std::numeric_limits<double>::infinity();
        witness = b.id;
        break;
      }
      if (num / den > beta) {
        beta = num / den;
        witness = b.id;
      }
    }
    prof.alphas.push_back(alpha);
    prof.beta.push_back(beta);
    prof.witness_ball.push_back(witness);
  }
  return prof;
}

GoodLambdaReport good_lambda_report(const BallBasis& basis, const RealFunction& f,
                                    const RealFunction& g, const WeightMeasure& w,
                                    double alpha, double beta,
                                    const std::vector<double>& lambda_grid) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha must lie in (0,1)");
  if (!(beta > 0.0)) throw parameter_error("beta must be positive");
  if (w.size() != basis.space().size()) throw structural_error("weight length mismatch");

  GoodLambdaReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  if (w.gamma) rep.gamma = *w.gamma;
  if (w.delta) rep.delta = *w.delta;

  for (double lambda : lambda_grid) {
    const auto big = superlevel_set(f, 2.0 * lambda, LevelMode::abs_gt);
    const auto quiet = set_difference(MeasurableSet::full(f.size()),
                                      superlevel_set(g, lambda / beta, LevelMode::abs_gt));
    const auto lhs_set = set_intersection(big, quiet);
    const auto rhs_set = superlevel_set(f, lambda, LevelMode::abs_gt);
    if (!is_subset(lhs_set, rhs_set)) rep.inclusion_ok = false;
    const double lhs = w.sum(lhs_set);
    const double rhs = w.sum(rhs_set);
    rep.lambdas.push_back(lambda);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.ratio.push_back(rhs > 0.0 ? lhs / rhs : 0.0);
  }
  rep.max_ratio = rep.ratio.empty() ? 0.0 : *std::max_element(rep.ratio.begin(), rep.ratio.end());
  if (w.gamma && w.delta) {
    const double scale = *w.gamma * std::pow(1.0 - alpha, *w.delta);
    rep.fitted_constant = scale > 0.0 ? rep.max_ratio / scale : 0.0;
  }
  return rep;
}

std::vector<double> default_lambda_grid(const RealFunction& f, int points) {
  std::vector<double> nz;
  double top = 0.0;
  for (double v : f.values) {
    const double a = std::abs(v);
    if (a > 0.0) nz.push_back(a);
    top = std::max(top, a);
  }
  if (nz.empty() || top <= 0.0) return {};
  const double lo = std::max(quantile(nz, 0.05), top * 1e-12);
  return log_grid(lo, top, points);
}

std::vector<double> default_t_grid(const BallBasis& basis, const RealFunction& f,
                                   const RealFunction& g, const MeasurableSet& B,
                                   TailKind kind, int points) {
  const PointSpace& space = basis.space();
  const double m = kind == TailKind::centered ? median(space, f, B) : 0.0;
  std::vector<double> ratios;
  for (int i : B.members()) {
    const double num = std::abs(f.values[static_cast<size_t>(i)] - m);
    const double den = std::abs(g.values[static_cast<size_t>(i)]);
    if (den > 0.0 && num > 0.0) ratios.push_back(num / den);
  }
  if (ratios.empty()) return {};
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  const double lo = std::max(quantile(ratios, 0.05), hi * 1e-12);
  return log_grid(lo, hi, points);
}

ExpTailReport exp_tail_report(const BallBasis& basis, const RealFunction& f,
                              const RealFunction& g, const MeasurableSet& B,
                              const std::vector<double>& t_grid, TailKind kind) {
  if (B.empty()) throw domain_error("tail over empty ball");
  const PointSpace& space = basis.space();
  const double muB = space.measure(B);
  const double m = kind == TailKind::centered ? median(space, f, B) : 0.0;

  ExpTailReport rep;
  for (double t : t_grid) {
    CompensatedSum acc;
    for (int i : B.members()) {
      const double num = std::abs(f.values[static_cast<size_t>(i)] - m);
      const double den = std::abs(g.values[static_cast<size_t>(i)]);
      if (num > t * den) acc.add(space.mu(i));
    }
    rep.ts.push_back(t);
    rep.tail.push_back(acc.value() / muB);
  }

  std::vector<double> xs, ys;
  for (size_t k = 0; k < rep.tail.size(); ++k) {
    if (rep.tail[k] > 0.0) {
      xs.push_back(rep.ts[k]);
      ys.push_back(std::log(rep.tail[k]));
    }
  }
  rep.fit_points = static_cast<int>(xs.size());
  if (xs.empty()) {
    rep.degenerate = true;
    rep.c = std::numeric_limits<double>::infinity();
    return rep;
  }
  const auto fit = least_squares(xs, ys);
  rep.c = -fit.slope;
  rep.C = std::exp(fit.intercept);
  rep.r2 = fit.r2;
  rep.certified = rep.fit_points >= 5 && rep.r2 >= 0.9 && rep.c > 0.0;
  return rep;
}

BoGoodLambdaReport good_lambda_bo(const OperatorSpec& op, const RealFunction& f,
                                  const BallBasis& basis, const std::vector<double>& eps_grid,
                                  const std::vector<double>& lambda_grid) {
  if (!op.localization_estimate || !op.weak_norm_estimate) {
    throw precondition_error("operator needs localization and weak-norm estimates");
  }
  if (!basis.is_doubling()) throw precondition_error("basis must be doubling");

  const PointSpace& space = basis.space();
  const RealFunction tf = apply(op, space, f);
  const RealFunction mf = maximal(basis, f, op.r);

  BoGoodLambdaReport rep;
  rep.lambdas = lambda_grid;
  const double hatL = *op.localization_estimate;
  const double hatW = *op.weak_norm_estimate;
  rep.eps_threshold = std::min(hatL > 0.0 ? 1.0 / (3.0 * hatL) : INFINITY,
                               hatW > 0.0 ? 1.0 / (9.0 * hatW) : INFINITY);

  std::vector<double> sorted_eps = eps_grid;
  std::sort(sorted_eps.begin(), sorted_eps.end());
  for (double eps : sorted_eps) {
    std::vector<double> row;
    double best = 0.0;
    for (double lambda : lambda_grid) {
      const auto loud = superlevel_set(tf, lambda, LevelMode::abs_gt);
      const auto calm = set_difference(MeasurableSet::full(f.size()),
                                       superlevel_set(mf, eps * lambda, LevelMode::gt));
      const double rhs = space.measure(loud);
      const double lhs = space.measure(set_intersection(loud, calm));
      const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
      row.push_back(ratio);
      best = std::max(best, ratio);
    }
    rep.eps.push_back(eps);
    rep.ratio.push_back(std::move(row));
    rep.max_ratio.push_back(best);
    rep.eps_flagged.push_back(eps > rep.eps_threshold);
  }
  for (size_t k = 1; k < rep.max_ratio.size(); ++k) {
    if (rep.max_ratio[k] + 1e-15 < rep.max_ratio[k - 1]) rep.monotone = false;
  }

  std::vector<double> xs, ys;
  for (size_t k = 0; k < rep.eps.size(); ++k) {
    if (!rep.eps_flagged[k] && rep.max_ratio[k] > 0.0) {
      xs.push_back(1.0 / rep.eps[k]);
      ys.push_back(std::log(rep.max_ratio[k]));
    }
  }
  if (xs.size() < 3) {
    xs.clear();
    ys.clear();
    for (size_t k = 0; k < rep.eps.size(); ++k) {
      if (rep.max_ratio[k] > 0.0) {
        xs.push_back(1.0 / rep.eps[k]);
        ys.push_back(std::log(rep.max_ratio[k]));
      }
    }
  }
  rep.fit_points = static_cast<int>(xs.size());
  if (rep.fit_points >= 2) {
    const auto fit = least_squares(xs, ys);
    rep.c = -fit.slope;
    rep.c_T = std::exp(fit.intercept);
    rep.r2 = fit.r2;
    rep.certified = rep.c > 0.0 && rep.fit_points >= 3;
  }
  return rep;
}

NormComparison norm_comparison(const RealFunction& f, const RealFunction& g,
                               const WeightMeasure& w, const std::vector<double>& p_grid) {
  NormComparison out;
  for (double p : p_grid) {
    const double num = lp_norm(f, p, w);
    const double den = lp_norm(g, p, w);
    out.ps.push_back(p);
    if (den > 0.0) {
      out.ratio.push_back(num / den);
    } else {
      out.ratio.push_back(num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    }
  }
  return out;
}

DominationProfile sharp_domination_check(const BallBasis& basis, const RealFunction& f,
                                         double r, const std::vector<double>& alpha_grid,
                                         SharpDenominator den) {
  const PointSpace& space = basis.space();
  const RealFunction mf = maximal(basis, f, r);
  RealFunction msharp;
  if (den == SharpDenominator::inf_sharp_max) msharp = sharp_maximal(basis, f, r);

  DominationProfile prof;
  prof.mode = DominationMode::strong;
  for (double alpha : alpha_grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("alpha grid must lie in (0,1)");
    double best = 0.0;
    int witness = -1;
    const double norm = std::pow(1.0 - alpha, -1.0 / r);
    for (const auto& b : basis.balls()) {
      const double d = den == SharpDenominator::starred_sharp
                           ? starred_sharp(basis, f, b.members, r)
                           : inf_ball(msharp, b.members);
      if (!(d > 0.0)) continue;  // constant-f balls are skipped
      const double num = osc_alpha(space, mf, b.members, alpha).value;
      const double c = num / (norm * d);
      if (c > best) {
        best = c;
        witness = b.id;
      }
    }
    prof.alphas.push_back(alpha);
    prof.beta.push_back(best);
    prof.witness_ball.push_back(witness);
  }
  return prof;
}

}  // namespace ballbasis
