#include "vpe/axiom_report.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vpe/error.hpp"

namespace vpe {
namespace {

void check_triple(const DistanceSpec& d, PointIndex x, PointIndex y, PointIndex z, double tol,
                  AxiomReport& report) {
  const double direct = d(x, z);
  const double detour = d(x, y) + d(y, z);
  if (direct > detour + tol) report.triangle_witnesses.push_back({x, y, z, direct, detour});
  ++report.triples_examined;
}

}  // namespace

AxiomReport axiom_report(const DistanceSpec& spec, const AxiomScanOptions& options) {
  const std::size_t n = spec.size();
  AxiomReport report;

  for (PointIndex x = 0; x < n; ++x) {
    if (spec(x, x) != 0.0) report.identity_ok = false;
    for (PointIndex y = 0; y < n; ++y) {
      if (x != y && !(spec(x, y) > 0.0)) report.identity_ok = false;
      if (x < y && std::abs(spec(x, y) - spec(y, x)) > options.tol) {
        report.symmetry_witnesses.push_back({x, y, spec(x, y), spec(y, x)});
      }
    }
  }

  const double triples = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  if (!options.sample_triples) {
    if (triples > static_cast<double>(options.max_full_triples)) {
      throw Error(ErrorKind::BudgetExceeded,
                  "full triangle scan needs " + std::to_string(n) + "^3 triples; supply a sampling budget");
    }
    report.mode = ScanMode::full;
    for (PointIndex x = 0; x < n; ++x) {
      for (PointIndex y = 0; y < n; ++y) {
        if (y == x) continue;
        for (PointIndex z = 0; z < n; ++z) {
          if (z != x && z != y) check_triple(spec, x, y, z, options.tol, report);
        }
      }
    }
    return report;
  }

  report.mode = ScanMode::sampled;
  if (n < 3) return report;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<PointIndex> pick(0, n - 1);
  for (std::size_t s = 0; s < *options.sample_triples; ++s) {
    PointIndex x = pick(rng), y = pick(rng), z = pick(rng);
    while (y == x) y = pick(rng);
    while (z == x || z == y) z = pick(rng);
    check_triple(spec, x, y, z, options.tol, report);
  }
  return report;
}

}  // namespace vpe
