#include "vpe/space.hpp"

#include "vpe/error.hpp"

namespace vpe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::NonSingleton: return "NonSingleton";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::TraceMismatch: return "TraceMismatch";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::EstimateViolation: return "EstimateViolation";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

PointSpace::PointSpace(std::vector<std::string> ids) : ids_(std::move(ids)) {
  if (ids_.empty()) throw Error(ErrorKind::BadParameter, "point space must be nonempty");
  index_.reserve(ids_.size());
  for (PointIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorKind::BadParameter, "duplicate point id '" + ids_[i] + "'");
    }
  }
}

PointSpace::PointSpace(std::vector<std::string> ids, std::vector<std::vector<double>> coords)
    : PointSpace(std::move(ids)) {
  if (coords.size() != ids_.size()) {
    throw Error(ErrorKind::BadParameter, "coordinate count does not match point count");
  }
  dim_ = coords.front().size();
  if (dim_ == 0) throw Error(ErrorKind::BadParameter, "coordinate dimension must be at least 1");
  coords_.reserve(ids_.size() * dim_);
  for (PointIndex i = 0; i < coords.size(); ++i) {
    if (coords[i].size() != dim_) {
      throw Error(ErrorKind::BadParameter, "point '" + ids_[i] + "' has coordinate dimension " +
                                               std::to_string(coords[i].size()) + ", expected " +
                                               std::to_string(dim_));
    }
    coords_.insert(coords_.end(), coords[i].begin(), coords[i].end());
  }
}

PointIndex PointSpace::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::UnknownPoint, "no point '" + std::string(id) + "' in space");
}

std::optional<PointIndex> PointSpace::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const double> PointSpace::coords(PointIndex i) const {
  if (!has_coords()) throw Error(ErrorKind::DomainViolation, "space carries no coordinates");
  if (i >= size()) throw Error(ErrorKind::UnknownPoint, "point index out of range");
  return {coords_.data() + i * dim_, dim_};
}

SpacePtr make_pair_space(const PointSpace& base) {
  std::vector<std::string> ids;
  ids.reserve(base.size() * base.size());
  for (const auto& x : base.ids()) {
    for (const auto& y : base.ids()) ids.push_back("(" + x + "," + y + ")");
  }
  return make_space(std::move(ids));
}

}  // namespace vpe
