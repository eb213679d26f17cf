#include "vpe/engine.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vpe/error.hpp"
#include "vpe/kernels.hpp"

namespace vpe {
namespace {

void require_quasi_minimizer(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                             PointIndex z0) {
  if (f.size() != spec.size()) {
    throw Error(ErrorKind::BadParameter, "objective has " + std::to_string(f.size()) +
                                             " values for a space of " +
                                             std::to_string(spec.size()) + " points");
  }
  if (z0 >= spec.size()) throw Error(ErrorKind::UnknownPoint, "starting point outside the space");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorKind::BadParameter, "epsilon must be a positive real");
  }
  if (!f.finite_at(z0)) {
    throw Error(ErrorKind::HypothesisViolation, "f(z0) is infinite");
  }
  if (!(f(z0) < f.infimum() + epsilon)) {
    throw Error(ErrorKind::HypothesisViolation,
                "z0 is not an epsilon-quasi-minimizer: f(z0) = " + std::to_string(f(z0)) +
                    " >= inf f + epsilon = " + std::to_string(f.infimum() + epsilon));
  }
}

/// Picks z_i from the members of `mask` using the running values.
class PointPicker {
 public:
  explicit PointPicker(const Picker& picker) : picker_(picker), rng_(picker.seed) {}

  PointIndex pick(std::span<const double> values, kernels::ConstMask mask, double slack) {
    const auto& k = kernels::active();
    const kernels::ArgMin best = k.masked_argmin(values, mask);
    if (picker_.kind == Picker::Kind::exact) return best.index;
    const double level = best.value + slack;
    candidates_.clear();
    for (PointIndex z = 0; z < values.size(); ++z) {
      if (mask[z] != 0 && values[z] <= level) candidates_.push_back(z);
    }
    std::uniform_int_distribution<std::size_t> uniform(0, candidates_.size() - 1);
    return candidates_[uniform(rng_)];
  }

 private:
  Picker picker_;
  std::mt19937_64 rng_;
  std::vector<PointIndex> candidates_;
};

std::size_t iteration_budget(const EngineOptions& options, std::size_t n) {
  return options.max_iter > 0 ? options.max_iter : 10 * n;
}

}  // namespace

std::string_view to_string(PrincipleKind kind) {
  return kind == PrincipleKind::borwein_preiss ? "borwein_preiss" : "ekeland";
}

PerturbationSchedule::PerturbationSchedule(double epsilon, double delta0,
                                           std::variant<double, std::vector<double>> tail)
    : epsilon_(epsilon), delta0_(delta0), tail_(std::move(tail)) {
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) {
    throw Error(ErrorKind::BadParameter, "epsilon must be a positive real");
  }
  if (!(delta0_ > 0.0) || !std::isfinite(delta0_)) {
    throw Error(ErrorKind::BadParameter, "delta0 must be a positive real");
  }
}

PerturbationSchedule PerturbationSchedule::geometric(double epsilon, double delta0, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorKind::BadParameter, "geometric ratio gamma must lie in (0, 1)");
  }
  return PerturbationSchedule(epsilon, delta0, gamma);
}

PerturbationSchedule PerturbationSchedule::explicit_list(double epsilon, std::vector<double> deltas) {
  if (deltas.empty()) throw Error(ErrorKind::BadParameter, "explicit delta list is empty");
  for (double d : deltas) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorKind::BadParameter, "every delta_i must be a positive real");
    }
  }
  const double delta0 = deltas.front();
  return PerturbationSchedule(epsilon, delta0, std::move(deltas));
}

std::optional<double> PerturbationSchedule::delta(std::size_t i) const {
  if (is_geometric()) return delta0_ * std::pow(gamma(), static_cast<double>(i));
  const auto& list = deltas();
  if (i >= list.size()) return std::nullopt;
  return list[i];
}

double PerturbationSchedule::tail_sum_after(std::size_t i) const {
  if (is_geometric()) return *delta(i + 1) / (1.0 - gamma());
  double sum = 0.0;
  const auto& list = deltas();
  for (std::size_t k = i + 1; k < list.size(); ++k) sum += list[k];
  return sum;
}

double bp_radius(const PerturbationSchedule& schedule, std::size_t i) {
  return std::ldexp(schedule.epsilon() / schedule.delta0(), -static_cast<int>(i));
}

double bp_slack(const PerturbationSchedule& schedule, std::size_t i) {
  const auto delta = schedule.delta(i);
  if (!delta) throw Error(ErrorKind::BadParameter, "delta list exhausted at step " + std::to_string(i));
  return std::ldexp(schedule.epsilon() * *delta / schedule.delta0(), -static_cast<int>(i));
}

double ekeland_radius(std::size_t i) { return std::ldexp(1.0, -static_cast<int>(i)); }

double ekeland_slack(double epsilon, std::size_t i) {
  return std::ldexp(epsilon, -static_cast<int>(i));
}

NestedFamily ConstructionTrace::nested_family(double cutoff) const {
  NestedFamily family;
  for (const Iterate& it : iterates) {
    family.sets.push_back(it.set);
    family.centers.push_back(it.z);
    family.radii.push_back(it.radius);
  }
  if (!stabilized_at || iterates.empty()) return family;
  const Iterate& last = iterates.back();
  // Radii of both constructions halve from step to step.
  double radius = last.radius;
  while (!(radius < cutoff) && family.radii.size() < 4096) {
    radius *= 0.5;
    family.sets.push_back(PointSet::single(last.z));
    family.centers.push_back(last.z);
    family.radii.push_back(radius);
  }
  return family;
}

RunResult borwein_preiss(const DistanceSpec& spec, const ExtendedObjective& f,
                         const PerturbationSchedule& schedule, PointIndex z0,
                         const EngineOptions& options) {
  require_quasi_minimizer(spec, f, schedule.epsilon(), z0);
  const auto& k = kernels::active();
  const std::size_t n = spec.size();
  const std::size_t budget = iteration_budget(options, n);

  // running[z] = f(z) + sum_{k < i} delta_k d(z, z_k)
  std::vector<double> running(f.values().begin(), f.values().end());
  std::vector<std::uint8_t> mask(n, 1);
  std::vector<double> column(n);
  PointPicker picker(options.picker);

  ConstructionTrace trace;
  trace.kind = PrincipleKind::borwein_preiss;
  PointIndex z = z0;
  for (std::size_t i = 0;; ++i) {
    const auto delta = schedule.delta(i);
    if (!delta) {
      throw Error(ErrorKind::BadParameter,
                  "delta list exhausted at step " + std::to_string(i) + " before stabilization");
    }
    double slack = schedule.epsilon();
    if (i > 0) {
      slack = bp_slack(schedule, i);
      z = picker.pick(running, mask, slack);
    }
    const double value = running[z];
    spec.column_to(z, column);
    const std::size_t remaining = k.restrict_le(mask, running, *delta, column, value);
    k.accumulate_scaled(running, *delta, column);

    trace.iterates.push_back({z, PointSet::from_mask(mask), slack, bp_radius(schedule, i), value});
    if (remaining == 1) {
      trace.stabilized_at = i;
      return {z, std::move(trace)};
    }
    if (i + 1 >= budget) {
      throw Error(ErrorKind::IterationLimit,
                  "no stabilization within " + std::to_string(budget) + " iterations");
    }
  }
}

RunResult ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                  PointIndex z0, const EngineOptions& options) {
  require_quasi_minimizer(spec, f, epsilon, z0);
  const auto& k = kernels::active();
  const std::size_t n = spec.size();
  const std::size_t budget = iteration_budget(options, n);

  const std::span<const double> values = f.values();
  std::vector<std::uint8_t> mask(n, 1);
  std::vector<double> column(n);
  PointPicker picker(options.picker);

  ConstructionTrace trace;
  trace.kind = PrincipleKind::ekeland;
  PointIndex z = z0;
  for (std::size_t i = 0;; ++i) {
    double slack = epsilon;
    if (i > 0) {
      slack = ekeland_slack(epsilon, i);
      z = picker.pick(values, mask, slack);
    }
    spec.column_to(z, column);
    // S_i = { z' in S_{i-1} : f(z') + eps d(z', z_i) <= f(z_i) }
    const std::size_t remaining = k.restrict_le(mask, values, epsilon, column, values[z]);

    trace.iterates.push_back({z, PointSet::from_mask(mask), slack, ekeland_radius(i), values[z]});
    if (remaining == 1) {
      trace.stabilized_at = i;
      return {z, std::move(trace)};
    }
    if (i + 1 >= budget) {
      throw Error(ErrorKind::IterationLimit,
                  "no stabilization within " + std::to_string(budget) + " iterations");
    }
  }
}

RunResult weak_borwein_preiss(const DistanceSpec& spec, const ExtendedObjective& f, double delta0,
                              double gamma, const EngineOptions& options) {
  return borwein_preiss(spec, f, PerturbationSchedule::geometric(1.0, delta0, gamma), f.argmin(),
                        options);
}

RunResult weak_ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                       const EngineOptions& options) {
  return ekeland(spec, f, epsilon, f.argmin(), options);
}

}  // namespace vpe
