#include "ballbasis/covering.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ballbasis/functionals.hpp"
#include "ballbasis/util.hpp"

namespace ballbasis {

std::vector<int> besicovitch_select(const BallBasis& basis, const MeasurableSet& E,
                                    const std::vector<int>& candidate_ball_ids) {
  // Precondition: the candidates cover E.
  {
    MeasurableSet u;
    for (int id : candidate_ball_ids) u = set_union(u, basis.ball(id).members);
    if (!is_subset(E, u)) throw structural_error("candidates do not cover E");
  }
  std::vector<int> order = candidate_ball_ids;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = basis.ball_measure(a), mb = basis.ball_measure(b);
    if (ma != mb) return ma > mb;
    return a < b;
  });
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<int> chosen;
  MeasurableSet hull_union;
  for (int id : order) {
    if (is_subset(E, hull_union)) break;
    bool disjoint = true;
    for (int c : chosen) {
      if (intersects(basis.ball(id).members, basis.ball(c).members)) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) continue;
    chosen.push_back(id);
    hull_union = set_union(hull_union, basis.hull(id).members);
  }
  if (!is_subset(E, hull_union)) {
    throw algorithm_failure("greedy selection left part of E uncovered by hulls", chosen);
  }
  return chosen;
}

bool density_check(const BallBasis& basis, const MeasurableSet& E, int x, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw parameter_error("gamma must be in (0,1)");
  for (int id : basis.balls_containing(x)) {
    const double inter = basis.space().measure(set_intersection(basis.ball(id).members, E));
    if (inter > gamma * basis.ball_measure(id)) return true;
  }
  return false;
}

WellBalancedBall well_balanced(const BallBasis& basis, const MeasurableSet& F, int x) {
  if (!basis.is_doubling() || !basis.eta()) {
    throw precondition_error("well-balanced search needs a doubling basis");
  }
  const PointSpace& space = basis.space();
  const double muF = space.measure(F);
  if (!(muF < space.total_measure() / 4.0)) {
    throw precondition_error("mu(F) must be below mu(X)/4");
  }

  // Balls through x at least half-filled by F; the density point hypothesis
  // makes this family nonempty.
  int a0 = -1;
  double a0_measure = -1.0;
  for (int id : basis.balls_containing(x)) {
    const double m = basis.ball_measure(id);
    const double inter = space.measure(set_intersection(basis.ball(id).members, F));
    if (inter >= m / 2.0) {
      if (m > a0_measure || (m == a0_measure && id < a0)) {
        a0 = id;
        a0_measure = m;
      }
    }
  }
  if (a0 < 0) throw precondition_error("x is not a density point of F");

  auto witness = basis.doubling_witness(a0);
  if (!witness) throw structural_error("doubling witness missing for a small ball");
  const int b = *witness;
  const int bstar = basis.hull_id(b);

  const double eta = *basis.eta();
  const double K = basis.K();
  const double mB = basis.ball_measure(b);
  const double mBstar = basis.ball_measure(bstar);
  const double interB = space.measure(set_intersection(basis.ball(b).members, F));
  const double interBstar = space.measure(set_intersection(basis.ball(bstar).members, F));

  WellBalancedBall out;
  out.ball_id = b;
  out.slack_hull_lower = interBstar - mBstar / (2.0 * eta * K);
  out.slack_hull_upper = mBstar / 2.0 - interBstar;
  out.slack_ball_lower = interB - mB / (2.0 * eta);
  out.slack_ball_upper = mB / 2.0 - interB;
  return out;
}

BalancedCover balanced_cover(const BallBasis& basis, const MeasurableSet& F,
                             const MeasurableSet& Fprime) {
  if (!basis.has_atom_balls()) {
    throw precondition_error("balanced cover needs an atomized basis");
  }
  if (!basis.is_doubling() || !basis.eta()) {
    throw precondition_error("balanced cover needs a doubling basis");
  }
  if (!is_subset(Fprime, F)) throw precondition_error("F' must be a subset of F");
  const PointSpace& space = basis.space();
  const double muF = space.measure(F);
  if (!(muF < space.total_measure() / 4.0)) {
    throw precondition_error("mu(F) must be below mu(X)/4");
  }

  BalancedCover cover;
  cover.F = F;
  cover.Fprime = Fprime;
  cover.sum_bound = 2.0 * *basis.eta() * basis.K() * muF;
  if (Fprime.empty()) {
    cover.covers = cover.meets = cover.sum_ok = cover.half_ok = true;
    return cover;
  }

  std::vector<int> candidates;
  std::set<int> seen;
  for (int x : Fprime.members()) {
    const auto wb = well_balanced(basis, F, x);
    if (seen.insert(wb.ball_id).second) candidates.push_back(wb.ball_id);
  }
  const auto chosen = besicovitch_select(basis, Fprime, candidates);

  std::set<int> hull_seen;
  for (int g : chosen) {
    const int hk = basis.hull_id(g);
    if (hull_seen.insert(hk).second) cover.ball_ids.push_back(hk);
  }

  MeasurableSet covered;
  CompensatedSum total;
  cover.meets = true;
  cover.half_ok = true;
  for (int bk : cover.ball_ids) {
    const auto& mem = basis.ball(bk).members;
    covered = set_union(covered, mem);
    total.add(basis.ball_measure(bk));
    if (!intersects(mem, Fprime)) cover.meets = false;
    const double slack =
        basis.ball_measure(bk) / 2.0 - space.measure(set_intersection(mem, F));
    cover.half_slack.push_back(slack);
    if (slack < -1e-12 * basis.ball_measure(bk)) cover.half_ok = false;
  }
  cover.sum_measure = total.value();
  cover.covers = is_subset(Fprime, covered);
  cover.sum_ok = cover.sum_measure <= cover.sum_bound * (1.0 + 1e-12);
  return cover;
}

double calderon_default_alpha(const BallBasis& basis) {
  if (!basis.eta()) throw precondition_error("default alpha needs a doubling basis");
  const double K = basis.K();
  const double eta = *basis.eta();
  return std::max(0.75, 1.0 - 1.0 / (8.0 * eta * K * K * K));
}

CalderonTree calderon_tree(const BallBasis& basis, const RealFunction& f, int root_ball_id,
                           double alpha) {
  if (!(alpha > 0.75 && alpha < 1.0)) {
    throw parameter_error("tree alpha must lie in (3/4, 1)");
  }
  if (!basis.has_atom_balls() || !basis.is_doubling()) {
    throw precondition_error("tree construction needs an atomized doubling basis");
  }
  if (root_ball_id < 0 || root_ball_id >= basis.ball_count()) {
    throw parameter_error("root ball id out of range");
  }
  const PointSpace& space = basis.space();
  const double K = basis.K();

  CalderonTree tree;
  tree.root = root_ball_id;
  tree.alpha = alpha;

  auto make_node = [&](int id) {
    CalderonNode node;
    node.ball_id = id;
    const auto& hull_members = basis.hull(id).members;
    const auto opt = osc_alpha(space, f, hull_members, alpha);
    node.osc_opt = opt.value;
    // Good set: the heaviest value-window of twice the optimal width.  The
    // factor-2 slack keeps the residual far smaller than the 1-alpha cap.
    node.good_set = widest_window_subset(space, f, hull_members, 2.0 * opt.value);
    node.good_osc = osc(f, node.good_set);

    const auto bad = set_difference(hull_members, node.good_set);
    const auto bad_prime = set_difference(basis.ball(id).members, node.good_set);
    node.child_bound = basis.ball_measure(id) / (4.0 * K);
    if (!bad_prime.empty()) {
      if (!(space.measure(bad) < space.total_measure() / 4.0)) {
        throw precondition_error("residual set too large for the covering lemma");
      }
      const auto cover = balanced_cover(basis, bad, bad_prime);
      node.children = cover.ball_ids;
      CompensatedSum cs;
      for (int c : node.children) cs.add(basis.ball_measure(c));
      node.child_sum = cs.value();
    }
    node.a21_ok = node.child_sum <= node.child_bound * (1.0 + 1e-12);
    return node;
  };

  std::set<int> in_earlier_generations;
  tree.generations.push_back({root_ball_id});
  tree.nodes[root_ball_id] = make_node(root_ball_id);
  in_earlier_generations.insert(root_ball_id);

  while (!tree.generations.back().empty()) {
    if (tree.generations.size() > 64) {
      throw algorithm_failure("tree generations failed to terminate", {},
                              tree.generations.back().front());
    }
    std::vector<int> next;
    std::set<int> in_this_generation;
    for (int a : tree.generations.back()) {
      for (int g : tree.nodes[a].children) {
        if (in_this_generation.count(g)) continue;  // shared child
        if (in_earlier_generations.count(g)) {
          throw algorithm_failure("ball recurs across generations", {}, g);
        }
        in_this_generation.insert(g);
        next.push_back(g);
      }
    }
    for (int g : next) {
      tree.nodes[g] = make_node(g);
      in_earlier_generations.insert(g);
    }
    if (next.empty()) break;
    tree.generations.push_back(std::move(next));
  }

  // Good-set intersection between each parent and child.
  for (auto& [id, node] : tree.nodes) {
    for (int g : node.children) {
      if (!intersects(node.good_set, tree.nodes.at(g).good_set)) {
        node.a17_ok = false;
      }
    }
    tree.all_a21 = tree.all_a21 && node.a21_ok;
    tree.all_a17 = tree.all_a17 && node.a17_ok;
  }

  // Residual sets: suffix unions over the generations.
  const size_t gens = tree.generations.size();
  tree.delta_sets.assign(gens, {});
  tree.delta_measure.assign(gens, 0.0);
  MeasurableSet suffix;
  for (size_t k = gens; k-- > 0;) {
    for (int id : tree.generations[k]) {
      suffix = set_union(suffix, basis.ball(id).members);
    }
    tree.delta_sets[k] = suffix;
    tree.delta_measure[k] = space.measure(suffix);
  }
  const double root_measure = basis.ball_measure(root_ball_id);
  double c = 0.0;
  for (size_t k = 1; k < gens; ++k) {
    c = std::max(c, std::pow(4.0, static_cast<double>(k)) * tree.delta_measure[k] /
                        root_measure);
  }
  tree.decay_constant = c;
  return tree;
}

double chain_bound_max_violation(const BallBasis& basis, const RealFunction& f,
                                 const CalderonTree& tree) {
  const PointSpace& space = basis.space();
  const auto& root_members = basis.ball(tree.root).members;
  const double m = median(space, f, root_members);

  double worst = -std::numeric_limits<double>::infinity();
  for (int x : root_members.members()) {
    // Walk down: accumulate the per-node oscillation bound until x lands in a
    // good set.
    CompensatedSum osc_sum;
    int node_id = tree.root;
    bool settled = false;
    for (int steps = 0; steps <= tree.depth() + 1 && !settled; ++steps) {
      const auto& node = tree.nodes.at(node_id);
      osc_sum.add(node.osc_opt);
      if (node.good_set.contains(x)) {
        settled = true;
        break;
      }
      int next = -1;
      for (int g : node.children) {
        if (basis.ball(g).members.contains(x)) {
          next = g;
          break;
        }
      }
      if (next < 0) break;  // coverage gap; treated as a violation below
      node_id = next;
    }
    const double lhs = std::abs(f.values[static_cast<size_t>(x)] - m);
    const double rhs = settled ? 2.0 * osc_sum.value()
                               : -std::numeric_limits<double>::infinity();
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

}  // namespace ballbasis
