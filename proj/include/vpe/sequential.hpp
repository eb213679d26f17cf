#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vpe/distance.hpp"
#include "vpe/kernels.hpp"
#include "vpe/objective.hpp"

namespace vpe {

/// Subset of a space, kept sorted in space order.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<PointIndex> members);
  static PointSet from_mask(kernels::ConstMask mask);
  static PointSet single(PointIndex x) { return PointSet(std::vector<PointIndex>{x}); }

  const std::vector<PointIndex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(PointIndex x) const;
  bool subset_of(const PointSet& other) const;
  PointSet intersect(const PointSet& other) const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<PointIndex> members_;
};

enum class Side { right, left };

/// A computed prefix x_0..x_m of a sequence plus what is known about the rest.
/// Only an eventually-constant tail supports definitive verdicts.
struct SequenceTrace {
  std::vector<PointIndex> terms;
  std::optional<std::size_t> constant_from;  // eventually_constant(k); nullopt = unspecified

  /// Throws BadParameter if the invariants fail on a space of `space_size` points.
  void validate(std::size_t space_size) const;
};

enum class Verdict { yes, no, inconclusive };

/// { y : d(y, x) < r }. Note the argument order.
PointSet right_ball(const DistanceSpec& spec, PointIndex x, double r);

/// Entry i: sup_{j >= i} d(x_j, x_i) (right) or d(x_i, x_j) (left) over the
/// stored prefix, which is the exact modulus when the tail is constant.
std::vector<double> cauchy_modulus(const DistanceSpec& spec, const SequenceTrace& seq, Side side);

/// Right: d(x, x_i) -> 0. Left: d(x_i, x) -> 0.
Verdict converges_to(const DistanceSpec& spec, const SequenceTrace& seq, PointIndex x, Side side,
                     double tol = 1e-9);

/// { x : f(x) <= lambda }, infinite values never included.
PointSet sublevel_set(const ExtendedObjective& f, double lambda);

/// Decreasing sets S_i with centers x_i in S_i and S_i inside the right ball
/// around x_i of radius r_i.
struct NestedFamily {
  std::vector<PointSet> sets;
  std::vector<PointIndex> centers;
  std::vector<double> radii;
};

/// User-supplied families are checked against the open ball (d < r); families
/// harvested from engine traces satisfy d <= r and are checked that way.
enum class Containment { strict, non_strict };

struct CantorResult {
  PointIndex limit;
  bool singleton_check;
};

/// Finite surrogate of the nested-set intersection lemma: validates the
/// hypotheses, requires the last radius below `cutoff` (default: half the
/// minimum positive distance), and returns the single point of the
/// intersection. Throws HypothesisViolation or NonSingleton.
CantorResult cantor_intersect(const DistanceSpec& spec, const NestedFamily& family,
                              Containment containment = Containment::strict,
                              std::optional<double> cutoff = std::nullopt);

}  // namespace vpe
