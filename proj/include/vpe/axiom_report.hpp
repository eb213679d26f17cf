#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vpe/distance.hpp"

namespace vpe {

struct SymmetryWitness {
  PointIndex x, y;
  double forward;   // d(x, y)
  double backward;  // d(y, x)
};

struct TriangleWitness {
  PointIndex x, y, z;
  double direct;  // d(x, z)
  double detour;  // d(x, y) + d(y, z)
};

enum class ScanMode { full, sampled };

/// Audit of which metric axioms a distance breaks on a space. Under a full
/// scan the witness lists are exhaustive; under sampling they are best-effort.
struct AxiomReport {
  ScanMode mode = ScanMode::full;
  bool identity_ok = true;
  std::vector<SymmetryWitness> symmetry_witnesses;
  std::vector<TriangleWitness> triangle_witnesses;
  std::size_t triples_examined = 0;
};

struct AxiomScanOptions {
  double tol = 1e-9;
  /// Full scans above this many ordered triples raise BudgetExceeded unless
  /// a sampling budget is supplied.
  std::size_t max_full_triples = 8'000'000;
  std::optional<std::size_t> sample_triples;
  std::uint64_t seed = 0;
};

AxiomReport axiom_report(const DistanceSpec& spec, const AxiomScanOptions& options = {});

}  // namespace vpe
