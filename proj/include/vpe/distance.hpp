#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vpe/space.hpp"

namespace vpe {

/// Built-in distance families. None of them is required to be symmetric or
/// to satisfy the triangle inequality; the identity axiom d(x,y)=0 <=> x=y is
/// the only law, and it is enforced for every constructed spec.
enum class Family {
  table,
  euclidean,
  lp_frac,
  kl,
  itakura_saito,
  sq_euclidean,
  symmetrized,
  product,
};

std::string_view to_string(Family family);
std::optional<Family> family_from_string(std::string_view name);

/// Family-specific construction parameters for make_builtin.
struct BuiltinParams {
  std::optional<double> p;                  // lp_frac exponent, 0 < p < 1
  std::vector<std::vector<double>> matrix;  // table family, rows indexed by space order
};

inline constexpr double kKlNormalizationTol = 1e-9;

/// (sum_i |a_i - b_i|^p)^(1/p)
double lp_frac_distance(std::span<const double> a, std::span<const double> b, double p);
/// sum_i a_i log(a_i / b_i), in nats
double kl_divergence(std::span<const double> a, std::span<const double> b);
/// sum_i (a_i / b_i - log(a_i / b_i) - 1)
double itakura_saito_distance(std::span<const double> a, std::span<const double> b);

/// An immutable distance function on a finite space. All families except
/// `product` are materialized into a dense |X|^2 table at construction, which
/// is also when the identity axiom is checked by full scan.
class DistanceSpec {
 public:
  Family family() const noexcept { return family_; }
  const PointSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return space_->size(); }

  double operator()(PointIndex x, PointIndex y) const {
    if (!rows_.empty()) return rows_[x * size() + y];
    return product_eval(x, y);
  }

  /// d(x, y) by point id; throws UnknownPoint.
  double evaluate(std::string_view x, std::string_view y) const;

  /// out[z] = d(z, target) for every z.
  void column_to(PointIndex target, std::span<double> out) const;

  std::optional<double> exponent() const noexcept { return p_; }
  std::pair<double, double> weights() const noexcept { return weights_; }
  const std::shared_ptr<const DistanceSpec>& inner() const noexcept { return inner_; }

  /// Row-major d(x, y); empty for the product family.
  std::span<const double> matrix() const noexcept { return rows_; }

 private:
  friend DistanceSpec make_builtin(Family, const BuiltinParams&, SpacePtr);
  friend DistanceSpec symmetrize(const DistanceSpec&, double, double);
  friend DistanceSpec product_distance(const DistanceSpec&);

  DistanceSpec() = default;
  void materialize(const std::vector<double>& rows);
  double product_eval(PointIndex a, PointIndex b) const;

  Family family_ = Family::table;
  SpacePtr space_;
  std::optional<double> p_;
  std::pair<double, double> weights_{1.0, 0.0};
  std::shared_ptr<const DistanceSpec> inner_;
  std::vector<double> rows_;
  std::vector<double> cols_;  // cols_[t * n + z] = d(z, t)
};

/// Throws BadParameter, DomainViolation or AxiomViolation.
DistanceSpec make_builtin(Family family, const BuiltinParams& params, SpacePtr space);

inline DistanceSpec make_table(SpacePtr space, std::vector<std::vector<double>> matrix) {
  BuiltinParams params;
  params.matrix = std::move(matrix);
  return make_builtin(Family::table, params, std::move(space));
}

/// w_r * d(x, y) + w_l * d(y, x). Equal weights are evaluated as
/// w * (d(x, y) + d(y, x)) so the result is bitwise symmetric.
DistanceSpec symmetrize(const DistanceSpec& spec, double w_right, double w_left);

/// Distance on ordered pairs with swapped arguments:
/// rho((x, y), (x', y')) = d(x', x) + d(y', y).
DistanceSpec product_distance(const DistanceSpec& spec);

/// Smallest off-diagonal value; +inf on a one-point space.
double min_positive_distance(const DistanceSpec& spec);

}  // namespace vpe
