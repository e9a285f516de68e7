#include "ballbasis/weights.hpp"

#include <algorithm>
#include <cmath>

#include "ballbasis/util.hpp"

namespace ballbasis {

AinftyReport ainfty_check(const WeightMeasure& w, const BallBasis& basis, double delta) {
  if (!(delta > 0.0)) throw parameter_error("delta must be > 0");
  if (w.size() != basis.space().size()) throw structural_error("weight length mismatch");

  AinftyReport rep;
  rep.delta = delta;
  const PointSpace& space = basis.space();

  for (const auto& b : basis.balls()) {
    const double wB = w.sum(b.members);
    if (!(wB > 0.0)) {
      throw degenerate_weight_error("weight vanishes on a ball");
    }
    const double muB = basis.ball_measure(b.id);

    // Density-greedy order; each prefix is the w-heaviest subset of its
    // mu-measure class.
    std::vector<int> order(b.members.members());
    std::sort(order.begin(), order.end(), [&](int i, int j) {
      const double di = w.w(i) / space.mu(i);
      const double dj = w.w(j) / space.mu(j);
      if (di != dj) return di > dj;
      return i < j;
    });
    CompensatedSum wE, muE;
    for (size_t k = 0; k < order.size(); ++k) {
      wE.add(w.w(order[k]));
      muE.add(space.mu(order[k]));
      const double ratio =
          (wE.value() / wB) / std::pow(muE.value() / muB, delta);
      if (ratio > rep.gamma) {
        rep.gamma = ratio;
        rep.worst_ball = b.id;
        rep.worst_subset = MeasurableSet::from_indices(
            std::vector<int>(order.begin(), order.begin() + static_cast<long>(k) + 1));
      }
    }
  }
  rep.pass = std::isfinite(rep.gamma);
  return rep;
}

WeightMeasure make_weight(WeightKind kind, const PointSpace& space, double power_exponent,
                          int atom, double mass) {
  const int n = space.size();
  std::vector<double> w(static_cast<size_t>(n));
  switch (kind) {
    case WeightKind::lebesgue:
      for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = space.mu(i);
      break;
    case WeightKind::power:
      if (!(power_exponent > -1.0)) throw parameter_error("power exponent must be > -1");
      for (int i = 0; i < n; ++i) {
        w[static_cast<size_t>(i)] = std::pow(std::abs(space.coord(i)), power_exponent) * space.mu(i);
      }
      break;
    case WeightKind::atomic:
      if (atom < 0 || atom >= n) throw parameter_error("atom index out of range");
      if (!(mass >= 0.0)) throw parameter_error("mass must be nonnegative");
      for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = space.mu(i);
      w[static_cast<size_t>(atom)] += mass;
      break;
  }
  return WeightMeasure(std::move(w));
}

}  // namespace ballbasis
