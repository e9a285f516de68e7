#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ballbasis/space.hpp"

namespace ballbasis {

struct Ball {
  int id = -1;
  MeasurableSet members;
  std::optional<int> level;
};

class BallBasis;

/// Result of the axiom verifier.  Failures carry witnesses that re-fail the
/// corresponding inequality when rechecked.
struct AxiomReport {
  bool b1_pass = true;
  int b1_witness = -1;  // ball with empty member set

  bool b2_pass = true;
  std::array<int, 2> b2_witness{-1, -1};  // uncovered atom pair

  /// "certified-exact" on atomized bases (every set is a union of balls,
  /// eps = 0), otherwise "not-verified".
  std::string b3_status;

  bool b4_pass = true;        // declared hull map satisfies the containment axiom
  int b4_witness_ball = -1;   // ball whose declared hull misses something
  int b4_witness_other = -1;  // offending ball not contained in the hull (-1: no
                              // basis ball can contain the required union)
  bool b4_feasible = true;    // a valid hull exists inside the basis for every ball
  double K_declared = std::numeric_limits<double>::quiet_NaN();
  double K_min = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> minimal_hull;  // per ball id; -1 where infeasible

  bool doubling_pass = false;
  double eta_min = std::numeric_limits<double>::infinity();
  int doubling_witness = -1;  // small ball with no doubling superset

  bool l9_pass = false;
  int l9_witness = -1;  // ball with mu > mu(X)/2 whose hull is not X

  bool pass() const { return b1_pass && b2_pass && b4_pass && b4_feasible; }
};

/// Explicit ball family over a point space, with a declared hull map and the
/// constants measured for it.  Immutable after construction.
class BallBasis {
 public:
  const PointSpace& space() const { return space_; }
  const std::vector<Ball>& balls() const { return balls_; }
  const Ball& ball(int id) const { return balls_[static_cast<size_t>(id)]; }
  int ball_count() const { return static_cast<int>(balls_.size()); }

  int hull_id(int ball_id) const { return hull_[static_cast<size_t>(ball_id)]; }
  const Ball& hull(int ball_id) const { return ball(hull_id(ball_id)); }
  const std::vector<int>& hull_map() const { return hull_; }

  double K() const { return K_; }
  std::optional<double> eta() const { return eta_; }
  bool has_atom_balls() const { return has_atom_balls_; }
  bool is_doubling() const { return is_doubling_; }

  double ball_measure(int id) const { return measures_[static_cast<size_t>(id)]; }

  /// Exact list of balls containing atom x; nonempty whenever B2 holds.
  const std::vector<int>& balls_containing(int x) const;

  /// Basis ball ids whose member sets contain `s` (supersets, including any
  /// ball equal to s).
  std::vector<int> superset_ball_ids(const MeasurableSet& s) const;

  /// Smallest-measure ball strictly containing `a` with measure >= 2 mu(a);
  /// ties by id.  nullopt when none exists.
  std::optional<int> doubling_witness(int ball_id) const;

  friend BallBasis build_dyadic(int depth, const std::vector<double>* weights);
  friend BallBasis build_intervals(int n, const std::vector<double>* weights);
  friend BallBasis build_martingale(const PointSpace& space,
                                    const std::vector<std::vector<std::vector<int>>>& partitions);
  friend BallBasis build_custom(const PointSpace& space,
                                std::vector<std::vector<int>> member_sets,
                                const std::vector<int>* declared_hull);

 private:
  explicit BallBasis(PointSpace space) : space_(std::move(space)) {}

  void finalize();  // measures, containment index, flags, constants

  PointSpace space_;
  std::vector<Ball> balls_;
  std::vector<int> hull_;
  std::vector<double> measures_;
  std::vector<std::vector<int>> containing_;
  double K_ = 1.0;
  std::optional<double> eta_;
  bool has_atom_balls_ = false;
  bool is_doubling_ = false;
};

/// Dyadic basis on 2^depth atoms over [0,1): every dyadic interval at every
/// level (including singleton atoms), hull = parent, root hull = root.
BallBasis build_dyadic(int depth, const std::vector<double>* weights = nullptr);

/// All contiguous index intervals over n atoms on a line (midpoint
/// coordinates i + 0.5).  Hull is the minimal interval absorbing every
/// intersecting interval of at most twice the measure.  n <= 4096.
BallBasis build_intervals(int n, const std::vector<double>* weights = nullptr);

/// Cells of a nested partition chain, coarsest first, finest = atoms.
BallBasis build_martingale(const PointSpace& space,
                           const std::vector<std::vector<std::vector<int>>>& partitions);

/// Arbitrary ball family.  When no hull map is declared, the minimal valid
/// hull is computed per ball (hull = the ball itself where none exists; the
/// verifier reports such bases as B4-infeasible).
BallBasis build_custom(const PointSpace& space, std::vector<std::vector<int>> member_sets,
                       const std::vector<int>* declared_hull = nullptr);

/// Exhaustive verification of B1, B2, B4 (declared hull and recomputed
/// minimal hulls), minimal doubling constant, and the finite-measure hull
/// property (every ball of measure > mu(X)/2 must have hull X).
AxiomReport verify_axioms(const BallBasis& basis);

}  // namespace ballbasis
