#include "vpe/objective.hpp"

#include <algorithm>

#include "vpe/error.hpp"

namespace vpe {

ExtendedObjective::ExtendedObjective(std::vector<double> values) : values_(std::move(values)) {
  bool any_finite = false;
  for (PointIndex i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (std::isnan(v) || v == -kInfinity) {
      throw Error(ErrorKind::BadParameter, "objective value at index " + std::to_string(i) +
                                               " must be a real or +inf");
    }
    if (std::isfinite(v) && (!any_finite || v < inf_)) {
      inf_ = v;
      argmin_ = i;
      any_finite = true;
    }
  }
  if (!any_finite) throw Error(ErrorKind::BadParameter, "objective must be finite somewhere");
}

std::vector<PointIndex> ExtendedObjective::argmin_set() const {
  std::vector<PointIndex> out;
  for (PointIndex i = 0; i < values_.size(); ++i) {
    if (values_[i] == inf_) out.push_back(i);
  }
  return out;
}

double ExtendedObjective::max_finite() const {
  double best = inf_;
  for (double v : values_) {
    if (std::isfinite(v)) best = std::max(best, v);
  }
  return best;
}

}  // namespace vpe
