#include <doctest.h>

#include <cmath>

#include "ballbasis/functionals.hpp"
#include "ballbasis/rng.hpp"
#include "oracles.hpp"

using namespace ballbasis;

namespace {

PointSpace uniform(int n) { return PointSpace::uniform_unit(n); }

}  // namespace

TEST_CASE("oscillation basics") {
  RealFunction f{{1, 5, 2}};
  CHECK(osc(f, MeasurableSet::full(3)) == 4.0);
  CHECK(osc(RealFunction::constant(3, 7.0), MeasurableSet::full(3)) == 0.0);
  CHECK(osc(f, MeasurableSet::from_indices({0, 2})) == 1.0);
  CHECK_THROWS_AS(osc(f, MeasurableSet()), domain_error);
}

TEST_CASE("osc_alpha: examples and witness validity") {
  const auto space = uniform(4);
  RealFunction f{{0, 1, 2, 3}};
  const auto res = osc_alpha(space, f, MeasurableSet::full(4), 0.5);
  CHECK(res.value == doctest::Approx(1.0));
  CHECK(space.measure(res.witness) >= 0.5 * space.total_measure() - 1e-15);
  CHECK(osc(f, res.witness) == doctest::Approx(res.value));

  CHECK(osc_alpha(space, RealFunction::constant(4, 2.0), MeasurableSet::full(4), 0.3).value ==
        0.0);

  PointSpace skew({0.5, 1.5}, {0.9, 0.1});
  const auto r2 = osc_alpha(skew, RealFunction{{0, 100}}, MeasurableSet::full(2), 0.9);
  CHECK(r2.value == doctest::Approx(0.0));
  CHECK(r2.witness == MeasurableSet::from_indices({0}));

  CHECK_THROWS_AS(osc_alpha(space, f, MeasurableSet::full(4), 0.0), parameter_error);
  CHECK_THROWS_AS(osc_alpha(space, f, MeasurableSet::full(4), 1.0), parameter_error);
}

TEST_CASE("osc_alpha matches brute force on random small spaces") {
  RngStream rng(101, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto space = oracles::random_small_space(rng, 10);
    const auto f = oracles::random_function(rng, space.size());
    const auto B = MeasurableSet::full(space.size());
    const double alpha = 0.1 + 0.8 * rng.next_unit();
    const auto got = osc_alpha(space, f, B, alpha);
    const double want = oracles::brute_osc_alpha(space, f, B, alpha);
    CHECK(got.value == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("inf_alpha: examples and brute force") {
  const auto space = uniform(4);
  RealFunction g{{1, -2, 3, -4}};
  CHECK(inf_alpha(space, g, MeasurableSet::full(4), 0.5) == doctest::Approx(2.0));
  CHECK(inf_alpha(space, g, MeasurableSet::full(4), 1.0) == doctest::Approx(4.0));
  CHECK(inf_alpha(space, RealFunction::constant(4, -3.0), MeasurableSet::full(4), 0.4) ==
        doctest::Approx(3.0));
  CHECK_THROWS_AS(inf_alpha(space, g, MeasurableSet::full(4), 0.0), parameter_error);

  RngStream rng(102, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto sp = oracles::random_small_space(rng, 10);
    const auto f = oracles::random_function(rng, sp.size());
    const double alpha = 0.1 + 0.85 * rng.next_unit();
    const auto B = MeasurableSet::full(sp.size());
    CHECK(inf_alpha(sp, f, B, alpha) ==
          doctest::Approx(oracles::brute_inf_alpha(sp, f, B, alpha)).epsilon(1e-12));
  }
}

TEST_CASE("inf over a ball") {
  RealFunction g{{-2, 3}};
  CHECK(inf_ball(g, MeasurableSet::full(2)) == 2.0);
  CHECK(inf_ball(RealFunction{{1, 0, 5}}, MeasurableSet::full(3)) == 0.0);
  CHECK(inf_ball(RealFunction{{-7}}, MeasurableSet::single(0)) == 7.0);
}

TEST_CASE("median: examples and the lower-median convention") {
  CHECK(median(uniform(3), RealFunction{{1, 2, 3}}, MeasurableSet::full(3)) == 2.0);
  PointSpace half({0.5, 1.5}, {0.5, 0.5});
  CHECK(median(half, RealFunction{{0, 10}}, MeasurableSet::full(2)) == 0.0);
  CHECK(median(uniform(5), RealFunction::constant(5, 4.25), MeasurableSet::full(5)) == 4.25);

  RngStream rng(103, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto sp = oracles::random_small_space(rng, 11);
    const auto f = oracles::random_function(rng, sp.size());
    const auto B = MeasurableSet::full(sp.size());
    CHECK(median(sp, f, B) == oracles::brute_median(sp, f, B));
  }
}

TEST_CASE("averages and sharp averages") {
  const auto space = uniform(2);
  const auto B = MeasurableSet::full(2);
  CHECK(avg(space, RealFunction{{3, 4}}, B, 2) == doctest::Approx(std::sqrt(12.5)));
  CHECK(avg(space, RealFunction::constant(2, -5), B, 3) == doctest::Approx(5));
  CHECK(sharp_avg(space, RealFunction::constant(2, 9), B, 1) == doctest::Approx(0));
  CHECK(sharp_avg(space, RealFunction{{0, 2}}, B, 1) == doctest::Approx(1));

  const auto dyad = build_dyadic(2);
  RealFunction spike{{1, 0, 0, 0}};
  // sup over supersets of atom 0: 1, 1/2, 1/4 -> attained at the atom itself
  const auto atom0 = MeasurableSet::single(0);
  CHECK(starred_avg(dyad, spike, atom0, 1) == doctest::Approx(1.0));

  const auto d1 = build_dyadic(1);
  RealFunction f01{{0, 2}};
  CHECK(sharp_avg(d1.space(), f01, MeasurableSet::single(0), 1) == doctest::Approx(0));
  CHECK(starred_sharp(d1, f01, MeasurableSet::single(0), 1) == doctest::Approx(1.0));
}

TEST_CASE("maximal operators: constants and the spike example") {
  const auto dyad = build_dyadic(2);
  const auto c = RealFunction::constant(4, -3.0);
  const auto mc = maximal(dyad, c, 1);
  const auto sc = sharp_maximal(dyad, c, 1);
  const auto lc = local_sharp_maximal(dyad, c, 0.5);
  for (int i = 0; i < 4; ++i) {
    CHECK(mc.values[(size_t)i] == doctest::Approx(3.0));
    CHECK(sc.values[(size_t)i] == doctest::Approx(0.0));
    CHECK(lc.values[(size_t)i] == doctest::Approx(0.0));
  }

  RealFunction spike{{1, 0, 0, 0}};
  const auto ms = maximal(dyad, spike, 1);
  CHECK(ms.values[0] == doctest::Approx(1.0));
  CHECK(ms.values[1] == doctest::Approx(0.5));
  CHECK(ms.values[2] == doctest::Approx(0.25));
  CHECK(ms.values[3] == doctest::Approx(0.25));
}

TEST_CASE("pointwise bounds between the maximal functions") {
  RngStream rng(104, 0);
  const auto basis = build_dyadic(5);
  const int n = basis.space().size();
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracles::random_function(rng, n);
    const auto mf = maximal(basis, f, 1);
    const auto sf = sharp_maximal(basis, f, 1);
    const double alpha = 0.25;
    const auto lf = local_sharp_maximal(basis, f, alpha);
    for (int i = 0; i < n; ++i) {
      CHECK(sf.values[(size_t)i] <= 2.0 * mf.values[(size_t)i] + 1e-12);
      CHECK(alpha * lf.values[(size_t)i] <= sf.values[(size_t)i] + 1e-12);
      CHECK(std::abs(f.values[(size_t)i]) <= mf.values[(size_t)i] + 1e-12);
    }
  }
}

TEST_CASE("sharp average against shifted averages (constant grid)") {
  RngStream rng(105, 0);
  const auto basis = build_dyadic(4);
  const auto& space = basis.space();
  const auto f = oracles::random_function(rng, space.size());
  for (const auto& b : basis.balls()) {
    for (double c : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
      RealFunction shifted = f;
      for (auto& v : shifted.values) v -= c;
      CHECK(sharp_avg(space, f, b.members, 1) <=
            2.0 * avg(space, shifted, b.members, 1) + 1e-12);
    }
  }
}

TEST_CASE("oscillation is controlled by the local sharp maximal on every ball") {
  RngStream rng(106, 0);
  const auto basis = build_dyadic(4);
  const auto f = oracles::random_function(rng, basis.space().size());
  const double alpha = 0.25;
  const auto lf = local_sharp_maximal(basis, f, alpha);
  for (const auto& b : basis.balls()) {
    const double lhs = osc_alpha(basis.space(), f, b.members, alpha).value;
    CHECK(lhs <= inf_ball(lf, b.members) + 1e-12);
  }
}

TEST_CASE("starred sharp average is below the sharp maximal infimum on every ball") {
  RngStream rng(107, 0);
  const auto basis = build_dyadic(4);
  const auto f = oracles::random_function(rng, basis.space().size());
  const auto sf = sharp_maximal(basis, f, 1);
  const auto mf = maximal(basis, f, 1);
  for (const auto& b : basis.balls()) {
    CHECK(starred_sharp(basis, f, b.members, 1) <= inf_ball(sf, b.members) + 1e-12);
    CHECK(starred_avg(basis, f, b.members, 1) <= inf_ball(mf, b.members) + 1e-12);
  }
}

TEST_CASE("median sandwich over majority subsets") {
  RngStream rng(108, 0);
  const auto basis = build_dyadic(4);
  const auto& space = basis.space();
  int tested = 0;
  for (int trial = 0; trial < 500 && tested < 200; ++trial) {
    const auto f = oracles::random_function(rng, space.size());
    const int ball = rng.next_int(0, basis.ball_count() - 1);
    const auto& B = basis.ball(ball).members;
    const auto E = oracles::random_subset(rng, B);
    if (E.empty() || space.measure(E) <= space.measure(B) / 2.0) continue;
    ++tested;
    const double m = median(space, f, B);
    double lo = 1e300, hi = -1e300;
    for (int i : E.members()) {
      lo = std::min(lo, f.values[(size_t)i]);
      hi = std::max(hi, f.values[(size_t)i]);
    }
    CHECK(lo <= m + 1e-12);
    CHECK(m <= hi + 1e-12);
  }
  CHECK(tested >= 100);
}
