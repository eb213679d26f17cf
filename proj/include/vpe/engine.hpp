#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vpe/distance.hpp"
#include "vpe/objective.hpp"
#include "vpe/sequential.hpp"

namespace vpe {

/// Perturbation weights (delta_i) and the quasi-minimality level epsilon of
/// the Borwein-Preiss construction. The weights are either geometric,
/// delta_i = delta0 * gamma^i, or an explicit finite list starting at delta0.
class PerturbationSchedule {
 public:
  static PerturbationSchedule geometric(double epsilon, double delta0, double gamma);
  static PerturbationSchedule explicit_list(double epsilon, std::vector<double> deltas);

  double epsilon() const noexcept { return epsilon_; }
  double delta0() const noexcept { return delta0_; }
  bool is_geometric() const noexcept { return std::holds_alternative<double>(tail_); }
  double gamma() const { return std::get<double>(tail_); }
  const std::vector<double>& deltas() const { return std::get<std::vector<double>>(tail_); }

  /// delta_i, or nullopt past the end of an explicit list.
  std::optional<double> delta(std::size_t i) const;
  /// sum_{k > i} delta_k: closed form for geometric weights, the remaining
  /// listed weights otherwise.
  double tail_sum_after(std::size_t i) const;

 private:
  PerturbationSchedule(double epsilon, double delta0, std::variant<double, std::vector<double>> tail);

  double epsilon_;
  double delta0_;
  std::variant<double, std::vector<double>> tail_;
};

/// How z_i is chosen from S_{i-1}: the exact minimizer of the running
/// perturbed function (lowest index on ties), or a uniformly random point
/// within the construction's slack of the infimum.
struct Picker {
  enum class Kind { exact, quasi };
  Kind kind = Kind::exact;
  std::uint64_t seed = 0;

  static Picker exact() { return {}; }
  static Picker quasi(std::uint64_t seed) { return {Kind::quasi, seed}; }
};

struct EngineOptions {
  Picker picker;
  std::size_t max_iter = 0;  // 0 means 10 * |X|
};

enum class PrincipleKind { borwein_preiss, ekeland };

std::string_view to_string(PrincipleKind kind);

struct Iterate {
  PointIndex z;
  PointSet set;
  double slack;   // admissible distance above the infimum when z was picked
  double radius;  // proven bound on d(z', z) for every z' in `set`
  double value;   // perturbed value at z when it was picked
};

struct ConstructionTrace {
  PrincipleKind kind = PrincipleKind::borwein_preiss;
  std::vector<Iterate> iterates;
  std::optional<std::size_t> stabilized_at;

  /// The nested sets, centers and radii of the run, continued past
  /// stabilization (z_k = zbar, S_k = {zbar}) until the radius drops below
  /// `cutoff`.
  NestedFamily nested_family(double cutoff) const;
};

struct RunResult {
  PointIndex zbar;
  ConstructionTrace trace;
};

/// Radius bound of the BP construction at step i: epsilon / (2^i delta0).
double bp_radius(const PerturbationSchedule& schedule, std::size_t i);
/// Slack allowed when picking z_i (i >= 1): epsilon delta_i / (2^i delta0).
double bp_slack(const PerturbationSchedule& schedule, std::size_t i);
/// Radius bound of the Ekeland construction: 1 at i = 0, 2^-i after.
double ekeland_radius(std::size_t i);
/// Slack allowed when picking z_i (i >= 1): epsilon / 2^i.
double ekeland_slack(double epsilon, std::size_t i);

/// Borwein-Preiss construction. Requires f(z0) finite and
/// f(z0) < inf f + epsilon (HypothesisViolation otherwise).
RunResult borwein_preiss(const DistanceSpec& spec, const ExtendedObjective& f,
                         const PerturbationSchedule& schedule, PointIndex z0,
                         const EngineOptions& options = {});

/// Ekeland construction with nested S_i. Same hypothesis as borwein_preiss.
RunResult ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                  PointIndex z0, const EngineOptions& options = {});

/// epsilon = 1 and z0 = lowest-index global minimizer of f.
RunResult weak_borwein_preiss(const DistanceSpec& spec, const ExtendedObjective& f, double delta0,
                              double gamma, const EngineOptions& options = {});

/// z0 = lowest-index global minimizer of f.
RunResult weak_ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                       const EngineOptions& options = {});

}  // namespace vpe
