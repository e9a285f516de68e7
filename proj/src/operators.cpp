#include "ballbasis/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include "ballbasis/functionals.hpp"
#include "ballbasis/parallel.hpp"
#include "ballbasis/rng.hpp"
#include "ballbasis/util.hpp"

namespace ballbasis {

OperatorSpec OperatorSpec::maximal_op(const BallBasis& basis, double r) {
  OperatorSpec op;
  op.kind = OperatorKind::maximal;
  op.basis = &basis;
  op.r = r;
  return op;
}

OperatorSpec OperatorSpec::hilbert(double r) {
  OperatorSpec op;
  op.kind = OperatorKind::hilbert_truncated;
  op.r = r;
  return op;
}

OperatorSpec OperatorSpec::martingale(const BallBasis& basis, std::vector<int> signs) {
  OperatorSpec op;
  op.kind = OperatorKind::martingale_transform;
  op.basis = &basis;
  op.signs = std::move(signs);
  return op;
}

OperatorSpec OperatorSpec::carleson(FrequencyFamily freqs, double r) {
  if (freqs.xis.empty()) throw parameter_error("frequency family must be nonempty");
  OperatorSpec op;
  op.kind = OperatorKind::carleson_modulated;
  op.freqs = std::move(freqs);
  op.r = r;
  return op;
}

FrequencyFamily default_frequencies(int space_size, int count) {
  if (count < 1) throw parameter_error("need at least one frequency");
  FrequencyFamily fam;
  fam.xis.reserve(static_cast<size_t>(count));
  // Integer cycle counts spread over the grid band [0, n).
  for (int k = 0; k < count; ++k) {
    fam.xis.push_back(std::floor(static_cast<double>(k) * space_size / count));
  }
  return fam;
}

namespace {

void check_kernel_coords(const PointSpace& space) {
  std::vector<double> c = space.coords();
  std::sort(c.begin(), c.end());
  for (size_t i = 1; i < c.size(); ++i) {
    if (c[i] == c[i - 1]) throw structural_error("coordinate collision in kernel operator");
  }
}

/// Conditional expectation of f on the cells of one basis level.
RealFunction level_expectation(const BallBasis& basis, const RealFunction& f, int level) {
  RealFunction out = RealFunction::constant(basis.space().size(), 0.0);
  for (const auto& b : basis.balls()) {
    if (!b.level || *b.level != level) continue;
    const double mean = plain_mean(basis.space(), f, b.members);
    for (int i : b.members.members()) out.values[static_cast<size_t>(i)] = mean;
  }
  return out;
}

int max_level(const BallBasis& basis) {
  int lvl = -1;
  for (const auto& b : basis.balls()) {
    if (b.level) lvl = std::max(lvl, *b.level);
  }
  return lvl;
}

}  // namespace

RealFunction apply(const OperatorSpec& op, const PointSpace& space, const RealFunction& f) {
  if (f.size() != space.size()) throw structural_error("function length mismatch");
  const int n = space.size();
  switch (op.kind) {
    case OperatorKind::maximal: {
      if (!op.basis) throw structural_error("maximal operator needs a basis");
      if (op.basis->space().size() != n) throw structural_error("basis/space mismatch");
      return maximal(*op.basis, f, op.r);
    }
    case OperatorKind::hilbert_truncated: {
      check_kernel_coords(space);
      RealFunction out = RealFunction::constant(n, 0.0);
      for (int i = 0; i < n; ++i) {
        CompensatedSum acc;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          acc.add(f.values[static_cast<size_t>(j)] * space.mu(j) /
                  (space.coord(i) - space.coord(j)));
        }
        out.values[static_cast<size_t>(i)] = acc.value();
      }
      return out;
    }
    case OperatorKind::martingale_transform: {
      if (!op.basis) throw structural_error("martingale transform needs a basis");
      if (op.basis->space().size() != n) throw structural_error("basis/space mismatch");
      const int levels = max_level(*op.basis);
      if (levels < 1) throw structural_error("basis has no level structure");
      if (static_cast<int>(op.signs.size()) != levels) {
        throw structural_error("need one sign per refinement step");
      }
      RealFunction prev = level_expectation(*op.basis, f, 0);
      RealFunction out = RealFunction::constant(n, 0.0);
      for (int k = 1; k <= levels; ++k) {
        RealFunction cur = level_expectation(*op.basis, f, k);
        const double eps = op.signs[static_cast<size_t>(k) - 1] >= 0 ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) {
          out.values[static_cast<size_t>(i)] +=
              eps * (cur.values[static_cast<size_t>(i)] - prev.values[static_cast<size_t>(i)]);
        }
        prev = std::move(cur);
      }
      return out;
    }
    case OperatorKind::carleson_modulated: {
      check_kernel_coords(space);
      RealFunction out = RealFunction::constant(n, 0.0);
      const double two_pi = 6.283185307179586476925286766559;
      for (int i = 0; i < n; ++i) {
        double best = 0.0;
        for (double xi : op.freqs.xis) {
          std::complex<double> acc(0.0, 0.0);
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double phase = two_pi * xi * space.coord(j);
            const double kernel =
                f.values[static_cast<size_t>(j)] * space.mu(j) /
                (space.coord(i) - space.coord(j));
            acc += std::complex<double>(std::cos(phase), std::sin(phase)) * kernel;
          }
          best = std::max(best, std::abs(acc));
        }
        out.values[static_cast<size_t>(i)] = best;
      }
      return out;
    }
  }
  throw parameter_error("unknown operator kind");
}

RealFunction sample_function(const PointSpace& space, std::uint64_t master_seed,
                             std::uint64_t stream, const std::string& kind) {
  RngStream rng(master_seed, stream);
  const int n = space.size();
  RealFunction f = RealFunction::constant(n, 0.0);
  std::string k = kind;
  if (k == "cycle") {
    const char* kinds[] = {"gaussian", "signs", "spike"};
    k = kinds[stream % 3];
  }
  if (k == "gaussian") {
    for (int i = 0; i < n; ++i) f.values[static_cast<size_t>(i)] = rng.next_gaussian();
  } else if (k == "signs") {
    for (int i = 0; i < n; ++i) f.values[static_cast<size_t>(i)] = rng.next_sign();
  } else if (k == "spike") {
    f.values[static_cast<size_t>(rng.next_int(0, n - 1))] = 1.0;
  } else {
    throw parameter_error("unknown sample kind: " + k);
  }
  return f;
}

double weak_constant_for(const PointSpace& space, const RealFunction& tf,
                         const RealFunction& f, double r) {
  WeightMeasure mu(space.weights());
  const double denom = lp_norm(f, r, mu);
  if (!(denom > 0.0)) return 0.0;
  // Sorted |Tf| values: the sup over lambda of lambda mu{|Tf|>lambda}^(1/r)
  // is approached at each attained value v from below, where the superlevel
  // set is {|Tf| >= v}.
  std::vector<std::pair<double, double>> vals;  // (|tf_i|, mu_i)
  vals.reserve(static_cast<size_t>(space.size()));
  for (int i = 0; i < space.size(); ++i) {
    vals.emplace_back(std::abs(tf.values[static_cast<size_t>(i)]), space.mu(i));
  }
  std::sort(vals.begin(), vals.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  CompensatedSum tail;
  for (size_t k = 0; k < vals.size(); ++k) {
    tail.add(vals[k].second);
    if (vals[k].first <= 0.0) break;
    if (k + 1 < vals.size() && vals[k + 1].first == vals[k].first) continue;
    best = std::max(best, vals[k].first * std::pow(tail.value(), 1.0 / r));
  }
  return best / denom;
}

double weak_norm_estimate(const OperatorSpec& op, const PointSpace& space, double r,
                          int sample_budget, std::uint64_t rng_seed) {
  if (sample_budget < 1) throw parameter_error("sample budget must be >= 1");
  std::vector<double> per_sample(static_cast<size_t>(sample_budget), 0.0);
  parallel_for(sample_budget, [&](int s) {
    const RealFunction f = sample_function(space, rng_seed, static_cast<std::uint64_t>(s));
    const RealFunction tf = apply(op, space, f);
    per_sample[static_cast<size_t>(s)] = weak_constant_for(space, tf, f, r);
  });
  double best = 0.0;
  for (double v : per_sample) best = std::max(best, v);
  return best;
}

double localization_estimate(const OperatorSpec& op, const BallBasis& basis,
                             int sample_budget, std::uint64_t rng_seed) {
  if (sample_budget < 1) throw parameter_error("sample budget must be >= 1");
  const PointSpace& space = basis.space();
  const MeasurableSet everything = MeasurableSet::full(space.size());
  std::vector<double> per_sample(static_cast<size_t>(sample_budget), 0.0);
  parallel_for(sample_budget, [&](int s) {
    RngStream rng(rng_seed, 1000000 + static_cast<std::uint64_t>(s));
    const int ball_id = rng.next_int(0, basis.ball_count() - 1);
    const RealFunction f = sample_function(space, rng_seed, static_cast<std::uint64_t>(s));
    const auto& b = basis.ball(ball_id);
    const auto outside = set_difference(everything, basis.hull(ball_id).members);
    const RealFunction truncated = restrict_to(f, outside);
    const RealFunction t_out = apply(op, space, truncated);
    const double denom = starred_avg(basis, f, b.members, op.r);
    if (!(denom > 0.0)) return;
    per_sample[static_cast<size_t>(s)] = osc(t_out, b.members) / denom;
  });
  double best = 0.0;
  for (double v : per_sample) best = std::max(best, v);
  return best;
}

}  // namespace ballbasis
