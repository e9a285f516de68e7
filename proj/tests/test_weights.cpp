#include <doctest.h>

#include <cmath>

#include "ballbasis/weights.hpp"
#include "oracles.hpp"

using namespace ballbasis;

TEST_CASE("lebesgue weight certifies with gamma 1 for delta at most 1") {
  const auto basis = build_dyadic(3);
  const auto w = make_weight(WeightKind::lebesgue, basis.space());
  for (double delta : {0.25, 0.5, 1.0}) {
    const auto rep = ainfty_check(w, basis, delta);
    CHECK(rep.pass);
    CHECK(rep.gamma == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("concentrated weight: gamma close to the atom count") {
  const auto basis = build_dyadic(4);  // 16 atoms
  const int n = basis.space().size();
  std::vector<double> w(static_cast<size_t>(n), 0.001 / (n - 1));
  w[3] = 0.999;
  const auto rep = ainfty_check(WeightMeasure(w), basis, 1.0);
  CHECK(rep.pass);
  CHECK(rep.gamma == doctest::Approx(0.999 * 16).epsilon(0.01));
  CHECK(rep.worst_ball >= 0);
  CHECK(rep.worst_subset.contains(3));
}

TEST_CASE("power weight passes at delta one half") {
  const auto basis = build_dyadic(5);
  const auto w = make_weight(WeightKind::power, basis.space(), 1.0);
  const auto rep = ainfty_check(w, basis, 0.5);
  CHECK(rep.pass);
  CHECK(std::isfinite(rep.gamma));
  CHECK(rep.gamma < 50.0);
}

TEST_CASE("atomic weight with a huge mass produces a huge gamma at its atom") {
  const auto basis = build_dyadic(4);
  const auto w = make_weight(WeightKind::atomic, basis.space(), 0.0, 5, 1e6);
  const auto rep = ainfty_check(w, basis, 1.0);
  CHECK(rep.gamma > 1e4);
  CHECK(rep.worst_subset.contains(5));
}

TEST_CASE("prefix sweep equals brute force over all subsets (delta <= 1)") {
  RngStream rng(201, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = rng.next_int(2, 9);
    std::vector<double> mu(static_cast<size_t>(n)), wv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      mu[(size_t)i] = rng.next_int(1, 64) / 64.0;
      wv[(size_t)i] = rng.next_int(1, 64) / 64.0;
    }
    const auto basis = build_intervals(n, &mu);
    const WeightMeasure w(wv);
    const double delta = trial % 2 == 0 ? 1.0 : 0.3 + 0.7 * rng.next_unit();
    const auto rep = ainfty_check(w, basis, delta);
    double brute = 0.0;
    for (const auto& b : basis.balls()) {
      brute = std::max(brute, oracles::brute_ainfty_gamma_for_ball(basis.space(), w,
                                                                   b.members, delta));
    }
    CHECK(rep.gamma == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("gamma is nondecreasing in delta") {
  const auto basis = build_dyadic(4);
  const auto w = make_weight(WeightKind::power, basis.space(), 1.0);
  double prev = 0.0;
  for (double delta : {0.25, 0.5, 0.75, 1.0}) {
    const auto rep = ainfty_check(w, basis, delta);
    CHECK(rep.gamma >= prev - 1e-12);
    prev = rep.gamma;
  }
}

TEST_CASE("worst witness reproduces gamma") {
  const auto basis = build_dyadic(4);
  const auto w = make_weight(WeightKind::atomic, basis.space(), 0.0, 2, 3.0);
  const auto rep = ainfty_check(w, basis, 0.5);
  const auto& B = basis.ball(rep.worst_ball).members;
  const double lhs = w.sum(rep.worst_subset) / w.sum(B);
  const double rhs = std::pow(basis.space().measure(rep.worst_subset) /
                                  basis.space().measure(B),
                              0.5);
  CHECK(lhs / rhs == doctest::Approx(rep.gamma).epsilon(1e-12));
}

TEST_CASE("degenerate weight errors out") {
  const auto basis = build_dyadic(2);
  std::vector<double> w = {0.0, 1.0, 1.0, 1.0};  // vanishes on the atom ball {0}
  CHECK_THROWS_AS(ainfty_check(WeightMeasure(w), basis, 1.0), degenerate_weight_error);
}

TEST_CASE("make_weight guards") {
  const auto space = PointSpace::uniform_unit(4);
  CHECK_THROWS_AS(make_weight(WeightKind::power, space, -1.5), parameter_error);
  CHECK_THROWS_AS(make_weight(WeightKind::atomic, space, 0.0, 9, 1.0), parameter_error);
}
