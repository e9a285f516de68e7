#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ballbasis/basis.hpp"
#include "ballbasis/space.hpp"

namespace ballbasis {

enum class OperatorKind { maximal, hilbert_truncated, martingale_transform, carleson_modulated };

/// Finite family of modulation frequencies for the maximal modulated
/// operator: phi_xi(x) = e^{2 pi i xi x}.
struct FrequencyFamily {
  std::vector<double> xis;
};

/// Description of a concrete operator.  `basis` is borrowed and must outlive
/// the spec (required by the maximal and martingale kinds).
struct OperatorSpec {
  OperatorKind kind = OperatorKind::hilbert_truncated;
  double r = 1.0;
  const BallBasis* basis = nullptr;
  std::vector<int> signs;  // martingale: one per refinement step, +1/-1
  FrequencyFamily freqs;   // carleson

  std::optional<double> weak_norm_estimate;    // empirical lower bound
  std::optional<double> localization_estimate; // empirical lower bound

  static OperatorSpec maximal_op(const BallBasis& basis, double r = 1.0);
  static OperatorSpec hilbert(double r = 1.0);
  static OperatorSpec martingale(const BallBasis& basis, std::vector<int> signs);
  static OperatorSpec carleson(FrequencyFamily freqs, double r = 1.0);
};

/// Default frequency family {k/n : k = 0..count-1 scaled over the space}: the
/// first `count` integer-period modulations of an n-atom grid.
FrequencyFamily default_frequencies(int space_size, int count);

/// Applies the operator.  hilbert: (Tf)(x_i) = sum_{j != i} f_j mu_j/(x_i - x_j).
/// carleson: max over the family of |sum_{j != i} e^{2 pi i xi x_j} f_j mu_j/(x_i - x_j)|.
/// martingale: sum_k eps_k (E_k f - E_{k-1} f) over the basis level partitions.
/// maximal: the maximal function of the attached basis.
RealFunction apply(const OperatorSpec& op, const PointSpace& space, const RealFunction& f);

/// Empirical lower bound for the localization constant: the largest observed
/// OSC_B(T(f restricted off hull(B))) / starred_avg(f, B) over sampled pairs.
double localization_estimate(const OperatorSpec& op, const BallBasis& basis,
                             int sample_budget, std::uint64_t rng_seed);

/// Empirical lower bound for ||T||_{L^r -> L^{r,inf}}: the largest observed
/// lambda mu{|Tf| > lambda}^{1/r} / ||f||_{L^r(mu)}, with the exact sup over
/// lambda taken at the attained values of |Tf|.
double weak_norm_estimate(const OperatorSpec& op, const PointSpace& space, double r,
                          int sample_budget, std::uint64_t rng_seed);

/// Exact per-function weak-(r,infinity) constant sup_l l mu{|g|>l}^{1/r},
/// divided by ||f||_{L^r(mu)}; shared by the estimator and the report code.
double weak_constant_for(const PointSpace& space, const RealFunction& tf,
                         const RealFunction& f, double r);

/// Sample families used by the estimators and the CLI: kind cycles through
/// gaussian, signs, spike with the stream index.
RealFunction sample_function(const PointSpace& space, std::uint64_t master_seed,
                             std::uint64_t stream, const std::string& kind = "cycle");

}  // namespace ballbasis
