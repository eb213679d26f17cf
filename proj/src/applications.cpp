#include "vpe/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "vpe/engine.hpp"
#include "vpe/error.hpp"

namespace vpe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw Error(ErrorKind::BadParameter, std::string(what) + " covers " + std::to_string(got) +
                                             " points, space has " + std::to_string(want));
  }
}

/// f(x, y) = phi(x) - (1 - eps) d(x, y) on the graph of T, +inf off it.
ExtendedObjective caristi_objective(const DistanceSpec& spec, const PotentialFn& phi,
                                    const SetValuedMap& map, double eps) {
  const std::size_t n = spec.size();
  std::vector<double> values(n * n, kInf);
  bool any_finite = false;
  for (const auto& [x, y] : map.graph()) {
    if (!phi.finite_at(x)) continue;
    values[x * n + y] = phi(x) - (1.0 - eps) * spec(x, y);
    any_finite = true;
  }
  if (!any_finite) {
    throw Error(ErrorKind::HypothesisViolation, "phi is infinite at every graph source");
  }
  return ExtendedObjective(std::move(values));
}

}  // namespace

SetValuedMap::SetValuedMap(std::size_t space_size,
                           std::vector<std::pair<PointIndex, PointIndex>> graph)
    : images_(space_size) {
  for (const auto& [x, y] : graph) {
    if (x >= space_size || y >= space_size) {
      throw Error(ErrorKind::UnknownPoint, "graph pair references a point outside the space");
    }
    images_[x].push_back(y);
  }
  for (auto& image : images_) {
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    edges_ += image.size();
  }
}

bool SetValuedMap::contains(PointIndex x, PointIndex y) const {
  const auto& image = images_.at(x);
  return std::binary_search(image.begin(), image.end(), y);
}

std::vector<std::pair<PointIndex, PointIndex>> SetValuedMap::graph() const {
  std::vector<std::pair<PointIndex, PointIndex>> out;
  out.reserve(edges_);
  for (PointIndex x = 0; x < images_.size(); ++x) {
    for (PointIndex y : images_[x]) out.emplace_back(x, y);
  }
  return out;
}

Bifunction::Bifunction(std::size_t space_size, std::vector<double> values)
    : n_(space_size), values_(std::move(values)) {
  if (values_.size() != n_ * n_) {
    throw Error(ErrorKind::BadParameter, "bifunction must have |X|^2 values");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::BadParameter, "bifunction values must be finite");
  }
}

CaristiScan check_caristi_hypothesis(const DistanceSpec& spec, const PotentialFn& phi,
                                     const SetValuedMap& map, double tol) {
  require_size(phi.size(), spec.size(), "potential");
  require_size(map.size(), spec.size(), "set-valued map");
  CaristiScan scan{true, {}};
  for (const auto& [x, y] : map.graph()) {
    // Off-graph pairs carry +inf on the right-hand side and never fail.
    if (!phi.finite_at(x)) continue;
    const double margin = phi.finite_at(y) ? phi(x) - spec(x, y) - phi(y) : -kInf;
    if (margin < -tol) {
      scan.ok = false;
      scan.witnesses.push_back({x, y, margin});
    }
  }
  return scan;
}

FixedPointSets brute_fixed_points(const SetValuedMap& map) {
  std::vector<PointIndex> fixed, endpoints;
  for (PointIndex x = 0; x < map.size(); ++x) {
    if (map.contains(x, x)) {
      fixed.push_back(x);
      if (map.image(x).size() == 1) endpoints.push_back(x);
    }
  }
  return {PointSet(std::move(fixed)), PointSet(std::move(endpoints))};
}

CaristiResult caristi_fixed_point(const DistanceSpec& spec, const PotentialFn& phi,
                                  const SetValuedMap& map, double eps, double tol) {
  if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::BadParameter, "eps must lie in (0, 1/2)");
  require_size(phi.size(), spec.size(), "potential");
  require_size(map.size(), spec.size(), "set-valued map");
  if (map.graph_empty()) throw Error(ErrorKind::EmptyGraph, "the graph of T is empty");
  const CaristiScan scan = check_caristi_hypothesis(spec, phi, map, tol);
  if (!scan.ok) {
    const PairWitness& w = scan.witnesses.front();
    throw Error(ErrorKind::HypothesisViolation,
                "phi(y) <= phi(x) - d(x, y) fails at (" + spec.space().id(w.x) + "," +
                    spec.space().id(w.y) + ") by " + std::to_string(-w.margin));
  }

  const std::size_t n = spec.size();
  const DistanceSpec rho = product_distance(spec);
  const ExtendedObjective f = caristi_objective(spec, phi, map, eps);
  const RunResult run = weak_ekeland(rho, f, eps);
  return assess_caristi_pair(spec, phi, map, eps, run.zbar / n, run.zbar % n, tol, &run.trace);
}

CaristiResult assess_caristi_pair(const DistanceSpec& spec, const PotentialFn& phi,
                                  const SetValuedMap& map, double eps, PointIndex xbar,
                                  PointIndex ybar, double tol, const ConstructionTrace* trace) {
  const std::size_t n = spec.size();
  if (xbar >= n || ybar >= n) throw Error(ErrorKind::UnknownPoint, "candidate pair outside the space");
  const DistanceSpec rho = product_distance(spec);
  const ExtendedObjective f = caristi_objective(spec, phi, map, eps);
  const PointIndex zbar = xbar * n + ybar;

  CaristiResult result{ybar, false, xbar, ybar, kInf, kInf, kInf,
                       verify_ekeland(rho, f, eps, f.argmin(), zbar, tol, trace)};

  for (const auto& [x, y] : map.graph()) {
    const double m = f(x * n + y) + eps * rho(x * n + y, zbar) - f(zbar);
    result.evp_min_margin = std::min(result.evp_min_margin, m);
  }
  if (!f.finite_at(zbar)) result.evp_min_margin = -kInf;

  const auto& image = map.image(ybar);
  if (image.empty()) {
    throw Error(ErrorKind::HypothesisViolation,
                "T(" + spec.space().id(ybar) + ") is empty, so no point of T(ybar) can be forced");
  }
  const double gap = phi(xbar) - phi(ybar) - spec(xbar, ybar);
  for (PointIndex z : image) {
    result.rearranged_lower_margin = std::min(result.rearranged_lower_margin, gap);
    result.rearranged_upper_margin =
        std::min(result.rearranged_upper_margin, -(1.0 - 2.0 * eps) * spec(ybar, z) - gap);
  }
  result.endpoint_ok = image.size() == 1 && image.front() == ybar;
  return result;
}

std::optional<PairWitness> find_estimate_violation(const Bifunction& bifunction,
                                                   const PotentialFn& phi, double tol) {
  const std::size_t n = bifunction.size();
  require_size(phi.size(), n, "potential");
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = 0; y < n; ++y) {
      const double margin = bifunction(x, y) - (phi(y) - phi(x));
      if (!(margin >= -tol)) return PairWitness{x, y, margin};
    }
  }
  return std::nullopt;
}

std::vector<double> default_eps_schedule() {
  std::vector<double> out;
  for (int i = 1; i <= 20; ++i) out.push_back(std::ldexp(1.0, -i));
  return out;
}

EquilibriumResult equilibrium_solve(const DistanceSpec& spec, const Bifunction& bifunction,
                                    const PotentialFn& phi, const std::vector<double>& eps_schedule,
                                    double tol) {
  const std::size_t n = spec.size();
  require_size(bifunction.size(), n, "bifunction");
  require_size(phi.size(), n, "potential");
  for (PointIndex x = 0; x < n; ++x) {
    if (!phi.finite_at(x)) throw Error(ErrorKind::BadParameter, "potential must be finite");
  }
  if (eps_schedule.empty()) throw Error(ErrorKind::BadParameter, "eps schedule is empty");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0) || (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))) {
      throw Error(ErrorKind::BadParameter, "eps schedule must be positive and strictly decreasing");
    }
  }
  if (const auto w = find_estimate_violation(bifunction, phi, tol)) {
    throw Error(ErrorKind::EstimateViolation,
                "F(x, y) >= phi(y) - phi(x) fails at (" + spec.space().id(w->x) + "," +
                    spec.space().id(w->y) + ") by " + std::to_string(-w->margin));
  }

  const auto residual_at = [&](PointIndex x) {
    double r = kInf;
    for (PointIndex y = 0; y < n; ++y) r = std::min(r, bifunction(x, y));
    return r;
  };

  EquilibriumResult result{0, {}, kInf};
  std::map<PointIndex, std::size_t> frequency;
  for (double eps : eps_schedule) {
    const PointIndex xi = weak_ekeland(spec, phi, eps).zbar;
    double bound = kInf;
    for (PointIndex y = 0; y < n; ++y) bound = std::min(bound, bifunction(xi, y) + eps * spec(y, xi));
    const double residual = residual_at(xi);
    result.stages.push_back({eps, xi, residual, bound});
    ++frequency[xi];
    if (residual >= -tol) break;
  }

  // Pigeonhole: the most frequent stage point, lowest index on ties.
  std::size_t best_count = 0;
  for (const auto& [x, count] : frequency) {
    if (count > best_count) {
      best_count = count;
      result.xbar = x;
    }
  }
  result.final_residual = residual_at(result.xbar);
  if (result.final_residual < -tol) {
    throw Error(ErrorKind::NoConvergence, "eps schedule exhausted with min_y F(xbar, y) = " +
                                              std::to_string(result.final_residual));
  }
  return result;
}

PointSet brute_equilibria(const Bifunction& bifunction, double tol) {
  std::vector<PointIndex> out;
  const std::size_t n = bifunction.size();
  for (PointIndex x = 0; x < n; ++x) {
    bool ok = true;
    for (PointIndex y = 0; y < n && ok; ++y) ok = bifunction(x, y) >= -tol;
    if (ok) out.push_back(x);
  }
  return PointSet(std::move(out));
}

}  // namespace vpe
