#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "vpe/certificate.hpp"
#include "vpe/distance.hpp"
#include "vpe/objective.hpp"
#include "vpe/sequential.hpp"

namespace vpe {

/// T : X -o X stored by its graph. T(x) may be empty.
class SetValuedMap {
 public:
  SetValuedMap(std::size_t space_size, std::vector<std::pair<PointIndex, PointIndex>> graph);

  std::size_t size() const noexcept { return images_.size(); }
  const std::vector<PointIndex>& image(PointIndex x) const { return images_.at(x); }
  bool contains(PointIndex x, PointIndex y) const;
  bool graph_empty() const noexcept { return edges_ == 0; }
  std::size_t graph_size() const noexcept { return edges_; }
  /// Graph pairs in lexicographic order.
  std::vector<std::pair<PointIndex, PointIndex>> graph() const;

 private:
  std::vector<std::vector<PointIndex>> images_;
  std::size_t edges_ = 0;
};

/// F : X x X -> R as a dense row-major table over the space order.
class Bifunction {
 public:
  Bifunction(std::size_t space_size, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(PointIndex x, PointIndex y) const { return values_[x * n_ + y]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

struct PairWitness {
  PointIndex x, y;
  double margin;  // negative: by how much the inequality fails
};

struct CaristiScan {
  bool ok;
  std::vector<PairWitness> witnesses;
};

/// phi(y) <= phi(x) - d(x, y) for every (x, y) in the graph of T.
CaristiScan check_caristi_hypothesis(const DistanceSpec& spec, const PotentialFn& phi,
                                     const SetValuedMap& map, double tol = kDefaultTol);

struct FixedPointSets {
  PointSet fixed;      // x in T(x)
  PointSet endpoints;  // T(x) = {x}
};

FixedPointSets brute_fixed_points(const SetValuedMap& map);

struct CaristiResult {
  PointIndex point;  // ybar, a fixed point of T
  bool endpoint_ok;  // T(point) = {point}
  PointIndex xbar;
  PointIndex ybar;
  /// min over graph pairs of f(x, y) + eps rho((x, y), (xbar, ybar)) - f(xbar, ybar)
  double evp_min_margin;
  /// min over z in T(ybar) of the two sides of
  /// 0 <= phi(xbar) - phi(ybar) - d(xbar, ybar) <= -(1 - 2 eps) d(ybar, z)
  double rearranged_lower_margin;
  double rearranged_upper_margin;
  Certificate certificate;  // Ekeland certificate on the pair space
};

/// Minimizes f(x, y) = phi(x) - (1 - eps) d(x, y) + indicator of the graph
/// with the weak Ekeland construction under the swapped product distance and
/// returns the second component of the minimizer. eps must lie in (0, 1/2).
/// Throws BadParameter, EmptyGraph or HypothesisViolation.
CaristiResult caristi_fixed_point(const DistanceSpec& spec, const PotentialFn& phi,
                                  const SetValuedMap& map, double eps = 0.25,
                                  double tol = kDefaultTol);

/// Checks a candidate minimizer (xbar, ybar) of the Caristi pair objective
/// without rerunning the construction: the Ekeland certificate on the pair
/// space (with the run's trace, when given) and the forcing inequalities.
/// Throws HypothesisViolation when T(ybar) is empty.
CaristiResult assess_caristi_pair(const DistanceSpec& spec, const PotentialFn& phi,
                                  const SetValuedMap& map, double eps, PointIndex xbar,
                                  PointIndex ybar, double tol = kDefaultTol,
                                  const ConstructionTrace* trace = nullptr);

/// First pair with F(x, y) < phi(y) - phi(x) - tol, if any.
std::optional<PairWitness> find_estimate_violation(const Bifunction& bifunction,
                                                   const PotentialFn& phi,
                                                   double tol = kDefaultTol);

struct EquilibriumStage {
  double epsilon;
  PointIndex point;  // x_i
  double residual;   // min_y F(x_i, y)
  double bound;      // min_y F(x_i, y) + eps_i d(y, x_i)
};

struct EquilibriumResult {
  PointIndex xbar;
  std::vector<EquilibriumStage> stages;
  double final_residual;  // min_y F(xbar, y)
};

/// eps_i = 2^-i for i = 1..20.
std::vector<double> default_eps_schedule();

/// Runs the weak Ekeland construction on phi for each eps_i, stops early once
/// min_y F(x_i, y) clears -tol, and returns the most frequent x_i (lowest
/// index on ties). Throws EstimateViolation, BadParameter or NoConvergence.
EquilibriumResult equilibrium_solve(const DistanceSpec& spec, const Bifunction& bifunction,
                                    const PotentialFn& phi, const std::vector<double>& eps_schedule,
                                    double tol = kDefaultTol);

/// { x : F(x, y) >= -tol for every y }
PointSet brute_equilibria(const Bifunction& bifunction, double tol = 0.0);

}  // namespace vpe
