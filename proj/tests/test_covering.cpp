#include <doctest.h>

#include <cmath>
#include <set>

#include "ballbasis/covering.hpp"
#include "ballbasis/functionals.hpp"
#include "oracles.hpp"

using namespace ballbasis;

TEST_CASE("besicovitch: single covering ball and disjoint families") {
  const auto basis = build_dyadic(3);
  const auto E = MeasurableSet::from_indices({2, 3});
  // One ball already containing E.
  int cell = -1;
  for (const auto& b : basis.balls()) {
    if (b.members == MeasurableSet::from_indices({2, 3})) cell = b.id;
  }
  REQUIRE(cell >= 0);
  CHECK(besicovitch_select(basis, E, {cell}) == std::vector<int>{cell});

  // Pairwise disjoint cover is returned whole (hulls contain the balls).
  std::vector<int> leaves;
  for (const auto& b : basis.balls()) {
    if (b.members.size() == 1) leaves.push_back(b.id);
  }
  const auto chosen = besicovitch_select(basis, MeasurableSet::full(8), leaves);
  CHECK(chosen.size() == leaves.size());
}

TEST_CASE("besicovitch greedy matches an exhaustive disjoint-subfamily search") {
  const auto basis = build_dyadic(3);
  const auto E = MeasurableSet::from_indices({1, 2});
  // Overlapping two-atom windows around atoms 1-3, realized as basis cells
  // plus singletons, all valid covering candidates.
  std::vector<int> candidates;
  for (const auto& b : basis.balls()) {
    if (b.members.size() <= 2 && intersects(b.members, E)) candidates.push_back(b.id);
  }
  const auto chosen = besicovitch_select(basis, E, candidates);
  // pairwise disjoint
  for (size_t i = 0; i < chosen.size(); ++i) {
    for (size_t j = i + 1; j < chosen.size(); ++j) {
      CHECK_FALSE(
          intersects(basis.ball(chosen[i]).members, basis.ball(chosen[j]).members));
    }
  }
  // hull coverage
  MeasurableSet hulls;
  for (int id : chosen) hulls = set_union(hulls, basis.hull(id).members);
  CHECK(is_subset(E, hulls));

  // Exhaustive check: some disjoint subfamily with hull coverage exists.
  bool exists = false;
  for (unsigned mask = 1; mask < (1u << candidates.size()); ++mask) {
    std::vector<int> fam;
    for (size_t k = 0; k < candidates.size(); ++k) {
      if (mask & (1u << k)) fam.push_back(candidates[k]);
    }
    bool disjoint = true;
    for (size_t i = 0; i < fam.size() && disjoint; ++i) {
      for (size_t j = i + 1; j < fam.size(); ++j) {
        if (intersects(basis.ball(fam[i]).members, basis.ball(fam[j]).members)) {
          disjoint = false;
          break;
        }
      }
    }
    if (!disjoint) continue;
    MeasurableSet u;
    for (int id : fam) u = set_union(u, basis.hull(id).members);
    if (is_subset(E, u)) exists = true;
  }
  CHECK(exists);
}

TEST_CASE("besicovitch requires the candidates to cover E") {
  const auto basis = build_dyadic(2);
  CHECK_THROWS_AS(
      besicovitch_select(basis, MeasurableSet::full(4), {3 /* single leaf */}),
      structural_error);
}

TEST_CASE("density check") {
  const auto basis = build_dyadic(3);
  const auto E = MeasurableSet::from_indices({0, 1, 2});
  CHECK(density_check(basis, E, 0, 0.99));            // member of E, singleton ball
  CHECK(density_check(basis, MeasurableSet::full(8), 5, 0.9));
  CHECK_FALSE(density_check(basis, E, 7, 0.9));       // far from E
  CHECK_THROWS_AS(density_check(basis, E, 0, 1.5), parameter_error);
}

TEST_CASE("well-balanced ball around a single-atom set") {
  const auto basis = build_dyadic(4);  // 16 atoms, mu(atom) = 1/16 < 1/4 total
  const auto F = MeasurableSet::single(5);
  const auto wb = well_balanced(basis, F, 5);
  CHECK(wb.slack_hull_lower >= -1e-12);
  CHECK(wb.slack_hull_upper >= -1e-12);
  CHECK(wb.slack_ball_lower >= -1e-12);
  CHECK(wb.slack_ball_upper >= -1e-12);
  const auto& b = basis.ball(wb.ball_id).members;
  const double frac = basis.space().measure(set_intersection(b, F)) /
                      basis.space().measure(b);
  CHECK(frac >= 1.0 / (2.0 * *basis.eta()) - 1e-12);
  CHECK(frac <= 0.5 + 1e-12);
}

TEST_CASE("well-balanced preconditions") {
  const auto basis = build_dyadic(3);
  // mu(F) >= mu(X)/4
  const auto big = MeasurableSet::from_indices({0, 1, 2, 3});
  CHECK_THROWS_AS(well_balanced(basis, big, 0), precondition_error);
  // not a density point: x far from a tiny F with no half-filled ball
  const auto tiny = MeasurableSet::single(0);
  CHECK_THROWS_AS(well_balanced(basis, tiny, 7), precondition_error);
}

TEST_CASE("balanced cover: empty target") {
  const auto basis = build_dyadic(4);
  const auto cover = balanced_cover(basis, MeasurableSet::single(3), MeasurableSet());
  CHECK(cover.ball_ids.empty());
  CHECK(cover.covers);
  CHECK(cover.sum_ok);
}

TEST_CASE("balanced cover: scattered atoms on dyadic depth 4") {
  const auto basis = build_dyadic(4);
  const auto F = MeasurableSet::from_indices({2, 11});
  const auto cover = balanced_cover(basis, F, F);
  CHECK(cover.covers);
  CHECK(cover.meets);
  CHECK(cover.sum_ok);
  CHECK(cover.half_ok);
  CHECK(cover.sum_measure <= 2.0 * *basis.eta() * basis.K() * basis.space().measure(F) + 1e-12);
}

TEST_CASE("balanced cover: single atom") {
  const auto basis = build_dyadic(5);
  const auto F = MeasurableSet::single(17);
  const auto cover = balanced_cover(basis, F, F);
  REQUIRE(cover.ball_ids.size() == 1);
  const int bk = cover.ball_ids[0];
  CHECK(basis.space().measure(set_intersection(basis.ball(bk).members, F)) <=
        basis.ball_measure(bk) / 2.0 + 1e-15);
}

TEST_CASE("balanced cover random instances satisfy the three inequalities") {
  RngStream rng(301, 0);
  const auto basis = build_dyadic(6);
  const int n = basis.space().size();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> atoms;
    const int count = rng.next_int(1, n / 4 - 1);
    for (int k = 0; k < count; ++k) atoms.push_back(rng.next_int(0, n - 1));
    const auto F = MeasurableSet::from_indices(std::move(atoms));
    if (!(basis.space().measure(F) < basis.space().total_measure() / 4.0)) continue;
    const auto Fp = oracles::random_subset(rng, F);
    const auto cover = balanced_cover(basis, F, Fp);
    CHECK(cover.covers);
    CHECK(cover.meets);
    CHECK(cover.sum_ok);
    CHECK(cover.half_ok);
  }
}

TEST_CASE("tree: constant function gives a leaf") {
  const auto basis = build_dyadic(4);
  const auto tree =
      calderon_tree(basis, RealFunction::constant(16, 3.0), 0, 15.0 / 16.0);
  CHECK(tree.depth() == 0);
  CHECK(tree.nodes.at(0).children.empty());
  CHECK(tree.nodes.at(0).good_set == basis.hull(0).members);
  CHECK(tree.decay_constant == 0.0);
}

TEST_CASE("tree: two-valued indicator terminates immediately at alpha 15/16") {
  const auto basis = build_dyadic(6);
  RealFunction f = RealFunction::constant(64, 0.0);
  for (int i = 0; i < 32; ++i) f.values[(size_t)i] = 1.0;
  const auto tree = calderon_tree(basis, f, 0, 15.0 / 16.0);
  CHECK(tree.all_a21);
  CHECK(tree.all_a17);
  CHECK(tree.depth() <= 1);
  // Every parent-child pair has intersecting good sets.
  for (const auto& [id, node] : tree.nodes) {
    for (int g : node.children) {
      CHECK(intersects(node.good_set, tree.nodes.at(g).good_set));
    }
  }
}

TEST_CASE("tree: random functions keep the invariants and the decay") {
  RngStream rng(302, 0);
  const auto basis = build_dyadic(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracles::random_function(rng, basis.space().size());
    const auto tree = calderon_tree(basis, f, 0, 15.0 / 16.0);
    CHECK(tree.all_a21);
    CHECK(tree.all_a17);
    CHECK(tree.decay_constant <= 10.0);
    // Good sets carry at least alpha of the hull measure.
    for (const auto& [id, node] : tree.nodes) {
      const double hull_measure = basis.ball_measure(basis.hull_id(id));
      CHECK(basis.space().measure(node.good_set) >= tree.alpha * hull_measure - 1e-12);
      CHECK(node.good_osc <= 2.0 * node.osc_opt + 1e-12);
    }
    // Residual chain bound.
    CHECK(chain_bound_max_violation(basis, f, tree) <= 1e-9);
  }
}

TEST_CASE("tree: residual sets decrease and the root is covered") {
  RngStream rng(303, 0);
  const auto basis = build_dyadic(5);
  const auto f = oracles::random_function(rng, basis.space().size());
  const auto tree = calderon_tree(basis, f, 0, 15.0 / 16.0);
  for (size_t k = 1; k < tree.delta_sets.size(); ++k) {
    CHECK(is_subset(tree.delta_sets[k], tree.delta_sets[k - 1]));
  }
  CHECK(is_subset(basis.ball(0).members, tree.delta_sets[0]));
}

TEST_CASE("tree alpha guard") {
  const auto basis = build_dyadic(3);
  const auto f = RealFunction::constant(8, 1.0);
  CHECK_THROWS_AS(calderon_tree(basis, f, 0, 0.5), parameter_error);
  CHECK_THROWS_AS(calderon_tree(basis, f, 0, 1.0), parameter_error);
}

TEST_CASE("default tree alpha follows the basis constants") {
  const auto basis = build_dyadic(3);  // K = 2, eta = 2
  CHECK(calderon_default_alpha(basis) == doctest::Approx(1.0 - 1.0 / 128.0));
}
