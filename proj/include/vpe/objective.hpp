#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "vpe/space.hpp"

namespace vpe {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// f : X -> R u {+inf} as a value table in space order. At least one value
/// is finite; -inf and NaN are rejected.
class ExtendedObjective {
 public:
  explicit ExtendedObjective(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator()(PointIndex x) const { return values_[x]; }
  bool finite_at(PointIndex x) const { return std::isfinite(values_[x]); }
  std::span<const double> values() const noexcept { return values_; }

  /// Minimum finite value.
  double infimum() const noexcept { return inf_; }
  /// Lowest-index point attaining the infimum.
  PointIndex argmin() const noexcept { return argmin_; }
  /// All points attaining the infimum, in space order.
  std::vector<PointIndex> argmin_set() const;
  double max_finite() const;

 private:
  std::vector<double> values_;
  double inf_ = kInfinity;
  PointIndex argmin_ = 0;
};

/// Potential functions of the fixed-point and equilibrium applications share
/// the extended-real contract.
using PotentialFn = ExtendedObjective;

}  // namespace vpe
