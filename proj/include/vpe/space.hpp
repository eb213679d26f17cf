#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vpe {

/// Position of a point in its space's enumeration order.
using PointIndex = std::size_t;

/// Finite, ordered ground set. Optionally every point carries a real vector
/// of a common dimension. Immutable once built.
class PointSpace {
 public:
  explicit PointSpace(std::vector<std::string> ids);
  PointSpace(std::vector<std::string> ids, std::vector<std::vector<double>> coords);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(PointIndex i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  /// Throws Error(UnknownPoint) if absent.
  PointIndex index_of(std::string_view id) const;
  std::optional<PointIndex> find(std::string_view id) const;

  bool has_coords() const noexcept { return dim_ > 0; }
  std::size_t dimension() const noexcept { return dim_; }
  std::span<const double> coords(PointIndex i) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, PointIndex> index_;
  std::vector<double> coords_;  // row-major, size() x dim_
  std::size_t dim_ = 0;
};

using SpacePtr = std::shared_ptr<const PointSpace>;

inline SpacePtr make_space(std::vector<std::string> ids) {
  return std::make_shared<const PointSpace>(std::move(ids));
}

inline SpacePtr make_space(std::vector<std::string> ids, std::vector<std::vector<double>> coords) {
  return std::make_shared<const PointSpace>(std::move(ids), std::move(coords));
}

/// Space of ordered pairs (x, y) of `base`, indexed x * |base| + y, with ids "(x,y)".
SpacePtr make_pair_space(const PointSpace& base);

}  // namespace vpe
