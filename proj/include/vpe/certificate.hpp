#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpe/engine.hpp"

namespace vpe {

inline constexpr double kDefaultTol = 1e-9;

/// One conclusion of a variational principle, checked numerically.
struct Claim {
  char label;  // 'a', 'b' or 'c'
  bool satisfied;
  double margin;  // slack of the inequality; negative means violated
  std::optional<PointIndex> witness;  // point attaining the margin, if any
  std::string detail;
};

struct Certificate {
  PrincipleKind kind;
  PointIndex zbar;
  std::vector<Claim> claims;
  double tolerance;
  std::vector<std::string> notes;  // informational, never affect the verdict

  bool verified() const;
  const Claim& claim(char label) const;
};

/// Checks conclusions (a), (b), (c) of the Borwein-Preiss principle for the
/// candidate `zbar` against the recorded trace. The series over z_k is exact:
/// terms past stabilization use z_k = z_stab, summed in closed form.
/// Throws TraceMismatch if the trace was not produced from these inputs.
Certificate verify_bp(const DistanceSpec& spec, const ExtendedObjective& f,
                      const PerturbationSchedule& schedule, PointIndex z0, PointIndex zbar,
                      const ConstructionTrace& trace, double tol = kDefaultTol);

/// Checks conclusions (a), (b), (c) of the Ekeland principle for `zbar`.
/// When a trace is given, its start and radius law are checked too and the
/// looser radius epsilon / 2^i is reported as a note.
Certificate verify_ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                           PointIndex z0, PointIndex zbar, double tol = kDefaultTol,
                           const ConstructionTrace* trace = nullptr);

}  // namespace vpe
