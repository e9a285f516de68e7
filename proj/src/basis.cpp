#include "ballbasis/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "ballbasis/parallel.hpp"
#include "ballbasis/util.hpp"

namespace ballbasis {

namespace {

std::vector<double> prefix_sums(const PointSpace& space) {
  std::vector<double> p(static_cast<size_t>(space.size()) + 1, 0.0);
  for (int i = 0; i < space.size(); ++i) {
    p[static_cast<size_t>(i) + 1] = p[static_cast<size_t>(i)] + space.mu(i);
  }
  return p;
}

/// Union of every ball A with mu(A) <= 2 mu(B) and A intersecting B.
MeasurableSet b4_union(const BallBasis& basis, int b) {
  const auto& ball = basis.ball(b);
  const double cap = 2.0 * basis.ball_measure(b);
  std::vector<char> mark(static_cast<size_t>(basis.space().size()), 0);
  for (const auto& a : basis.balls()) {
    if (basis.ball_measure(a.id) > cap) continue;
    if (!intersects(a.members, ball.members)) continue;
    for (int i : a.members.members()) mark[static_cast<size_t>(i)] = 1;
  }
  std::vector<int> m;
  for (int i = 0; i < basis.space().size(); ++i) {
    if (mark[static_cast<size_t>(i)]) m.push_back(i);
  }
  return MeasurableSet::from_indices(std::move(m));
}

/// Minimal-measure ball containing `target`, ties by smallest id; -1 if none.
int minimal_covering_ball(const BallBasis& basis, const MeasurableSet& target) {
  int best = -1;
  double best_measure = std::numeric_limits<double>::infinity();
  for (const auto& c : basis.balls()) {
    if (static_cast<int>(c.members.size()) < target.size()) continue;
    if (!is_subset(target, c.members)) continue;
    const double m = basis.ball_measure(c.id);
    if (m < best_measure || (m == best_measure && (best == -1 || c.id < best))) {
      best = c.id;
      best_measure = m;
    }
  }
  return best;
}

}  // namespace

void BallBasis::finalize() {
  const int n = space_.size();
  measures_.resize(balls_.size());
  containing_.assign(static_cast<size_t>(n), {});
  std::vector<char> atom_seen(static_cast<size_t>(n), 0);
  for (const auto& b : balls_) {
    measures_[static_cast<size_t>(b.id)] = space_.measure(b.members);
    for (int i : b.members.members()) {
      if (i >= n) throw structural_error("ball member out of range");
      containing_[static_cast<size_t>(i)].push_back(b.id);
    }
    if (b.members.size() == 1) atom_seen[static_cast<size_t>(b.members.members()[0])] = 1;
  }
  has_atom_balls_ =
      std::all_of(atom_seen.begin(), atom_seen.end(), [](char c) { return c != 0; });
  if (hull_.size() != balls_.size()) throw structural_error("hull map size mismatch");
  double k = 1.0;
  for (const auto& b : balls_) {
    const int h = hull_[static_cast<size_t>(b.id)];
    if (h < 0 || h >= ball_count()) throw structural_error("hull id out of range");
    k = std::max(k, measures_[static_cast<size_t>(h)] / measures_[static_cast<size_t>(b.id)]);
  }
  K_ = k;
}

const std::vector<int>& BallBasis::balls_containing(int x) const {
  if (x < 0 || x >= space_.size()) throw structural_error("atom index out of range");
  return containing_[static_cast<size_t>(x)];
}

std::vector<int> BallBasis::superset_ball_ids(const MeasurableSet& s) const {
  std::vector<int> out;
  if (s.empty()) return out;
  // Every superset of s contains its first atom; scan only those balls.
  for (int id : balls_containing(s.members().front())) {
    if (is_subset(s, ball(id).members)) out.push_back(id);
  }
  return out;
}

std::optional<int> BallBasis::doubling_witness(int ball_id) const {
  const auto& a = ball(ball_id);
  const double ma = ball_measure(ball_id);
  int best = -1;
  double best_measure = std::numeric_limits<double>::infinity();
  for (int id : superset_ball_ids(a.members)) {
    const auto& c = ball(id);
    if (c.members.size() <= a.members.size()) continue;  // strict superset
    const double m = ball_measure(id);
    if (m < 2.0 * ma) continue;
    if (m < best_measure || (m == best_measure && (best == -1 || id < best))) {
      best = id;
      best_measure = m;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

BallBasis build_dyadic(int depth, const std::vector<double>* weights) {
  if (depth < 1) throw parameter_error("dyadic depth must be >= 1");
  if (depth > 24) throw resource_error("dyadic depth capped at 24");
  const int n = 1 << depth;
  std::vector<double> mu;
  if (weights) {
    if (static_cast<int>(weights->size()) != n) {
      throw structural_error("weights length must be 2^depth");
    }
    mu = *weights;
  } else {
    mu.assign(static_cast<size_t>(n), 1.0 / n);
  }
  std::vector<double> coords(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) coords[static_cast<size_t>(i)] = (i + 0.5) / n;

  BallBasis basis(PointSpace(std::move(coords), std::move(mu)));
  // Level-major ids: ball (level l, cell j) has id 2^l - 1 + j.
  for (int l = 0; l <= depth; ++l) {
    const int cells = 1 << l;
    const int len = n / cells;
    for (int j = 0; j < cells; ++j) {
      Ball b;
      b.id = (1 << l) - 1 + j;
      b.members = MeasurableSet::range(j * len, (j + 1) * len - 1);
      b.level = l;
      basis.balls_.push_back(std::move(b));
    }
  }
  basis.hull_.resize(basis.balls_.size());
  basis.hull_[0] = 0;  // root absorbs everything of measure <= 2 mu(X)
  for (int id = 1; id < basis.ball_count(); ++id) {
    basis.hull_[static_cast<size_t>(id)] = (id - 1) / 2;  // parent
  }
  basis.finalize();

  // Doubling: supersets in a dyadic family are exactly the ancestors, whose
  // measures increase up the chain, so the first ancestor reaching twice the
  // measure is the minimal witness.
  double eta = 2.0;
  bool ok = true;
  const double half_total = basis.space_.total_measure() / 2.0;
  for (int id = 1; id < basis.ball_count(); ++id) {
    const double ma = basis.measures_[static_cast<size_t>(id)];
    if (!(ma < half_total)) continue;
    int anc = (id - 1) / 2;
    bool found = false;
    while (true) {
      const double mb = basis.measures_[static_cast<size_t>(anc)];
      if (mb >= 2.0 * ma) {
        eta = std::max(eta, mb / ma);
        found = true;
        break;
      }
      if (anc == 0) break;
      anc = (anc - 1) / 2;
    }
    if (!found) ok = false;
  }
  basis.is_doubling_ = ok;
  if (ok) basis.eta_ = eta;
  return basis;
}

BallBasis build_intervals(int n, const std::vector<double>* weights) {
  if (n < 1) throw parameter_error("interval basis needs n >= 1");
  if (n > 4096) throw resource_error("interval basis capped at n = 4096");
  std::vector<double> mu;
  if (weights) {
    if (static_cast<int>(weights->size()) != n) throw structural_error("weights length mismatch");
    mu = *weights;
  } else {
    mu.assign(static_cast<size_t>(n), 1.0);
  }
  std::vector<double> coords(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) coords[static_cast<size_t>(i)] = i + 0.5;

  BallBasis basis(PointSpace(std::move(coords), std::move(mu)));
  std::vector<std::vector<int>> id_of(static_cast<size_t>(n),
                                      std::vector<int>(static_cast<size_t>(n), -1));
  int next_id = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      Ball ball;
      ball.id = next_id;
      ball.members = MeasurableSet::range(a, b);
      basis.balls_.push_back(std::move(ball));
      id_of[static_cast<size_t>(a)][static_cast<size_t>(b)] = next_id;
      ++next_id;
    }
  }
  basis.measures_.resize(basis.balls_.size());
  const auto pre = prefix_sums(basis.space_);
  auto seg = [&pre](int a, int b) {
    return pre[static_cast<size_t>(b) + 1] - pre[static_cast<size_t>(a)];
  };

  // Hull of [a,b]: extend to the farthest atoms reachable by an intersecting
  // interval of measure at most twice the ball's.
  basis.hull_.resize(basis.balls_.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const double cap = 2.0 * seg(a, b);
      int lo = a;
      while (lo > 0 && seg(lo - 1, a) <= cap) --lo;
      int hi = b;
      while (hi < n - 1 && seg(b, hi + 1) <= cap) ++hi;
      basis.hull_[static_cast<size_t>(id_of[static_cast<size_t>(a)][static_cast<size_t>(b)])] =
          id_of[static_cast<size_t>(lo)][static_cast<size_t>(hi)];
    }
  }
  basis.finalize();

  // Doubling search, one binary scan of the right endpoint per left endpoint.
  double eta = 2.0;
  bool ok = true;
  const double half_total = basis.space_.total_measure() / 2.0;
  for (int a = 0; a < n && ok; ++a) {
    for (int b = a; b < n; ++b) {
      const double ma = seg(a, b);
      if (!(ma < half_total)) break;  // further extensions only grow
      double best = std::numeric_limits<double>::infinity();
      for (int lo = a; lo >= 0; --lo) {
        // smallest hi >= b with seg(lo, hi) >= 2 ma, skipping (lo,hi)==(a,b)
        const double need = 2.0 * ma - (pre[static_cast<size_t>(b) + 1] -
                                        pre[static_cast<size_t>(lo)]);
        int hi;
        if (need <= 0.0) {
          hi = b;
        } else {
          auto it = std::lower_bound(pre.begin() + b + 2, pre.end(),
                                     2.0 * ma + pre[static_cast<size_t>(lo)]);
          if (it == pre.end()) continue;
          hi = static_cast<int>(it - pre.begin()) - 1;
        }
        if (lo == a && hi == b) continue;  // not a strict superset
        best = std::min(best, seg(lo, hi));
      }
      if (!std::isfinite(best)) {
        ok = false;
        break;
      }
      eta = std::max(eta, best / ma);
    }
  }
  basis.is_doubling_ = ok;
  if (ok) basis.eta_ = eta;
  return basis;
}

namespace {

/// Generic minimal doubling scan for bases without special structure.
void generic_doubling(BallBasis& basis, double& eta_out, bool& ok_out) {
  double eta = 2.0;
  bool ok = true;
  const double half_total = basis.space().total_measure() / 2.0;
  for (const auto& a : basis.balls()) {
    if (!(basis.ball_measure(a.id) < half_total)) continue;
    auto w = basis.doubling_witness(a.id);
    if (!w) {
      ok = false;
      continue;
    }
    eta = std::max(eta, basis.ball_measure(*w) / basis.ball_measure(a.id));
  }
  eta_out = eta;
  ok_out = ok;
}

}  // namespace

BallBasis build_martingale(const PointSpace& space,
                           const std::vector<std::vector<std::vector<int>>>& partitions) {
  if (partitions.empty()) throw structural_error("need at least one partition");
  const int n = space.size();

  // Validate each level is a partition and refines the previous one.
  std::vector<std::vector<int>> cell_of;  // per level: atom -> cell index
  for (size_t lvl = 0; lvl < partitions.size(); ++lvl) {
    std::vector<int> owner(static_cast<size_t>(n), -1);
    for (size_t c = 0; c < partitions[lvl].size(); ++c) {
      if (partitions[lvl][c].empty()) throw structural_error("empty partition cell");
      for (int i : partitions[lvl][c]) {
        if (i < 0 || i >= n) throw structural_error("partition index out of range");
        if (owner[static_cast<size_t>(i)] != -1) {
          throw structural_error("partition cells overlap");
        }
        owner[static_cast<size_t>(i)] = static_cast<int>(c);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (owner[static_cast<size_t>(i)] == -1) {
        throw structural_error("partition does not cover all atoms");
      }
    }
    if (lvl > 0) {
      // Atoms sharing a cell at this level must share one at the coarser level.
      for (size_t c = 0; c < partitions[lvl].size(); ++c) {
        const int coarse = cell_of.back()[static_cast<size_t>(partitions[lvl][c][0])];
        for (int i : partitions[lvl][c]) {
          if (cell_of.back()[static_cast<size_t>(i)] != coarse) {
            throw structural_error("partitions are not nested");
          }
        }
      }
    }
    cell_of.push_back(std::move(owner));
  }
  for (const auto& cell : partitions.back()) {
    if (cell.size() != 1) throw structural_error("finest partition must be atoms");
  }
  if (partitions.back().size() != static_cast<size_t>(n)) {
    throw structural_error("finest partition must be atoms");
  }

  BallBasis basis{PointSpace(space.coords(), space.weights())};
  int next_id = 0;
  std::vector<MeasurableSet> seen;
  for (size_t lvl = 0; lvl < partitions.size(); ++lvl) {
    for (const auto& cell : partitions[lvl]) {
      auto s = MeasurableSet::from_indices(cell);
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      Ball b;
      b.id = next_id++;
      b.members = std::move(s);
      b.level = static_cast<int>(lvl);
      basis.balls_.push_back(std::move(b));
    }
  }
  basis.measures_.resize(basis.balls_.size());
  for (const auto& b : basis.balls_) {
    basis.measures_[static_cast<size_t>(b.id)] = basis.space_.measure(b.members);
  }
  basis.hull_.assign(basis.balls_.size(), -1);
  for (const auto& b : basis.balls_) {
    // Minimal-cell search over the declared family.
    BallBasis& self = basis;
    const int h = minimal_covering_ball(self, b4_union(self, b.id));
    basis.hull_[static_cast<size_t>(b.id)] = h >= 0 ? h : b.id;
  }
  basis.finalize();
  double eta = 0.0;
  bool ok = false;
  generic_doubling(basis, eta, ok);
  basis.is_doubling_ = ok;
  if (ok) basis.eta_ = eta;
  return basis;
}

BallBasis build_custom(const PointSpace& space, std::vector<std::vector<int>> member_sets,
                       const std::vector<int>* declared_hull) {
  if (member_sets.empty()) throw structural_error("need at least one ball");
  BallBasis basis{PointSpace(space.coords(), space.weights())};
  int next_id = 0;
  for (auto& m : member_sets) {
    Ball b;
    b.id = next_id++;
    b.members = MeasurableSet::from_indices(std::move(m));
    if (b.members.empty()) throw structural_error("empty ball");
    basis.balls_.push_back(std::move(b));
  }
  basis.measures_.resize(basis.balls_.size());
  for (const auto& b : basis.balls_) {
    basis.measures_[static_cast<size_t>(b.id)] = basis.space_.measure(b.members);
  }
  if (declared_hull) {
    if (declared_hull->size() != basis.balls_.size()) {
      throw structural_error("declared hull map size mismatch");
    }
    basis.hull_ = *declared_hull;
  } else {
    basis.hull_.assign(basis.balls_.size(), -1);
    for (const auto& b : basis.balls_) {
      const int h = minimal_covering_ball(basis, b4_union(basis, b.id));
      basis.hull_[static_cast<size_t>(b.id)] = h >= 0 ? h : b.id;
    }
  }
  basis.finalize();
  double eta = 0.0;
  bool ok = false;
  generic_doubling(basis, eta, ok);
  basis.is_doubling_ = ok;
  if (ok) basis.eta_ = eta;
  return basis;
}

AxiomReport verify_axioms(const BallBasis& basis) {
  AxiomReport rep;
  const int n = basis.space().size();
  const int m = basis.ball_count();

  // B1: positive measure = nonempty member set (atom weights are positive).
  for (const auto& b : basis.balls()) {
    if (b.members.empty()) {
      rep.b1_pass = false;
      rep.b1_witness = b.id;
      break;
    }
  }

  // B2: every atom pair shares a ball.
  bool has_full = false;
  for (const auto& b : basis.balls()) {
    if (b.members.size() == n) {
      has_full = true;
      break;
    }
  }
  if (!has_full) {
    std::vector<std::vector<char>> covered(static_cast<size_t>(n),
                                           std::vector<char>(static_cast<size_t>(n), 0));
    for (const auto& b : basis.balls()) {
      const auto& mem = b.members.members();
      for (size_t i = 0; i < mem.size(); ++i) {
        for (size_t j = i; j < mem.size(); ++j) {
          covered[static_cast<size_t>(mem[i])][static_cast<size_t>(mem[j])] = 1;
        }
      }
    }
    for (int i = 0; i < n && rep.b2_pass; ++i) {
      for (int j = i; j < n; ++j) {
        if (!covered[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
          rep.b2_pass = false;
          rep.b2_witness = {i, j};
          break;
        }
      }
    }
  }

  rep.b3_status = basis.has_atom_balls() ? "certified-exact" : "not-verified";

  // B4: declared hull containment plus recomputed minimal hulls.
  rep.minimal_hull.assign(static_cast<size_t>(m), -1);
  std::vector<int> bad_other(static_cast<size_t>(m), -2);  // -2: hull fine
  parallel_for(m, [&](int id) {
    const auto u = b4_union(basis, id);
    if (!is_subset(u, basis.hull(id).members)) {
      // find a concrete offending ball for the witness
      const double cap = 2.0 * basis.ball_measure(id);
      int off = -1;
      for (const auto& a : basis.balls()) {
        if (basis.ball_measure(a.id) > cap) continue;
        if (!intersects(a.members, basis.ball(id).members)) continue;
        if (!is_subset(a.members, basis.hull(id).members)) {
          off = a.id;
          break;
        }
      }
      bad_other[static_cast<size_t>(id)] = off;
    }
    rep.minimal_hull[static_cast<size_t>(id)] = minimal_covering_ball(basis, u);
  });
  double k_declared = 1.0;
  double k_min = 1.0;
  for (int id = 0; id < m; ++id) {
    k_declared = std::max(k_declared,
                          basis.ball_measure(basis.hull_id(id)) / basis.ball_measure(id));
    if (bad_other[static_cast<size_t>(id)] != -2 && rep.b4_pass) {
      rep.b4_pass = false;
      rep.b4_witness_ball = id;
      rep.b4_witness_other = bad_other[static_cast<size_t>(id)];
    }
    const int mh = rep.minimal_hull[static_cast<size_t>(id)];
    if (mh < 0) {
      rep.b4_feasible = false;
      if (rep.b4_pass && rep.b4_witness_ball == -1) {
        rep.b4_witness_ball = id;
        rep.b4_witness_other = -1;
      }
      k_min = std::numeric_limits<double>::infinity();
    } else if (std::isfinite(k_min)) {
      k_min = std::max(k_min, basis.ball_measure(mh) / basis.ball_measure(id));
    }
  }
  rep.K_declared = k_declared;
  rep.K_min = k_min;
  if (!rep.b4_feasible) rep.b4_pass = false;

  // Minimal doubling constant over balls smaller than half the space.
  const double half_total = basis.space().total_measure() / 2.0;
  double eta = 2.0;
  bool doubling = true;
  for (const auto& a : basis.balls()) {
    if (!(basis.ball_measure(a.id) < half_total)) continue;
    auto w = basis.doubling_witness(a.id);
    if (!w) {
      doubling = false;
      if (rep.doubling_witness == -1) rep.doubling_witness = a.id;
      continue;
    }
    eta = std::max(eta, basis.ball_measure(*w) / basis.ball_measure(a.id));
  }
  rep.doubling_pass = doubling;
  rep.eta_min = doubling ? eta : std::numeric_limits<double>::infinity();

  // Finite-measure hull property: any ball over half the total measure must
  // hull to the whole space, and at least one hull must equal X.
  bool some_hull_is_x = false;
  bool big_ok = true;
  for (const auto& b : basis.balls()) {
    const bool hull_is_x = basis.hull(b.id).members.size() == n;
    if (hull_is_x) some_hull_is_x = true;
    if (basis.ball_measure(b.id) > half_total && !hull_is_x) {
      big_ok = false;
      if (rep.l9_witness == -1) rep.l9_witness = b.id;
    }
  }
  rep.l9_pass = some_hull_is_x && big_ok;
  return rep;
}

}  // namespace ballbasis
