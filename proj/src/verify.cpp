#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "vpe/certificate.hpp"
#include "vpe/error.hpp"
#include "vpe/kernels.hpp"

namespace vpe {
namespace {

[[noreturn]] void mismatch(const std::string& why) { throw Error(ErrorKind::TraceMismatch, why); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// a - b with the extended-real convention; inf - inf is reported as -inf so
// that an infinite candidate value never certifies anything.
double diff(double a, double b) {
  if (std::isinf(b)) return -std::numeric_limits<double>::infinity();
  return a - b;
}

/// Replays the set rules of a trace and checks each pick against its slack.
/// `weight(i)` is the multiplier of d(., z_i) in the set predicate; when
/// `accumulate` is set the running values gain that term after each step.
template <class WeightFn, class SlackFn>
std::vector<double> replay(const DistanceSpec& spec, const ExtendedObjective& f,
                           const ConstructionTrace& trace, WeightFn weight, SlackFn slack,
                           bool accumulate, double tol) {
  const auto& k = kernels::active();
  const std::size_t n = spec.size();
  std::vector<double> running(f.values().begin(), f.values().end());
  std::vector<std::uint8_t> mask(n, 1);
  std::vector<double> column(n);
  for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
    const Iterate& it = trace.iterates[i];
    if (it.z >= n) mismatch("iterate " + std::to_string(i) + " lies outside the space");
    const double w = weight(i);
    if (i > 0) {
      if (mask[it.z] == 0) mismatch("z_" + std::to_string(i) + " is not in S_" + std::to_string(i - 1));
      const double inf = k.masked_argmin(running, mask).value;
      if (running[it.z] > inf + slack(i) + tol) {
        mismatch("z_" + std::to_string(i) + " exceeds its slack above the infimum");
      }
    }
    spec.column_to(it.z, column);
    k.restrict_le(mask, running, w, column, running[it.z]);
    if (PointSet::from_mask(mask) != it.set) {
      mismatch("S_" + std::to_string(i) + " does not match its defining predicate");
    }
    if (accumulate) k.accumulate_scaled(running, w, column);
  }
  return running;
}

void check_trace_shape(const ConstructionTrace& trace, PrincipleKind kind, PointIndex z0) {
  if (trace.kind != kind) mismatch("trace was produced by a different construction");
  if (trace.iterates.empty()) mismatch("trace is empty");
  if (trace.iterates.front().z != z0) mismatch("trace does not start at z0");
  if (!trace.stabilized_at || *trace.stabilized_at + 1 != trace.iterates.size()) {
    mismatch("trace does not end at its stabilization index");
  }
  if (trace.iterates.back().set != PointSet::single(trace.iterates.back().z)) {
    mismatch("final set is not the singleton of the final iterate");
  }
}

}  // namespace

bool Certificate::verified() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.satisfied; });
}

const Claim& Certificate::claim(char label) const {
  for (const Claim& c : claims) {
    if (c.label == label) return c;
  }
  throw Error(ErrorKind::BadParameter, std::string("certificate has no claim ") + label);
}

Certificate verify_bp(const DistanceSpec& spec, const ExtendedObjective& f,
                      const PerturbationSchedule& schedule, PointIndex z0, PointIndex zbar,
                      const ConstructionTrace& trace, double tol) {
  const std::size_t n = spec.size();
  if (f.size() != n || z0 >= n || zbar >= n) mismatch("inputs do not fit the space");
  check_trace_shape(trace, PrincipleKind::borwein_preiss, z0);
  const auto delta = [&](std::size_t i) {
    const auto d = schedule.delta(i);
    if (!d) mismatch("trace is longer than the delta list");
    return *d;
  };
  std::vector<double> perturbed = replay(
      spec, f, trace, delta, [&](std::size_t i) { return bp_slack(schedule, i); }, true, tol);

  // Past stabilization z_k = z_stab, so the rest of the series is
  // tail_weight * d(., z_stab).
  const std::size_t stab = *trace.stabilized_at;
  const PointIndex zstab = trace.iterates[stab].z;
  const double tail_weight = schedule.tail_sum_after(stab);
  for (PointIndex z = 0; z < n; ++z) perturbed[z] += tail_weight * spec(z, zstab);

  Certificate cert{PrincipleKind::borwein_preiss, zbar, {}, tol, {}};

  // (a) d(zbar, z_i) <= eps / (2^i delta0), with the whole of S_i inside that radius.
  {
    Claim a{'a', true, std::numeric_limits<double>::infinity(), std::nullopt, ""};
    double margin_from_one = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
      const Iterate& it = trace.iterates[i];
      const double expected = bp_radius(schedule, i);
      if (std::abs(it.radius - expected) > tol * std::max(1.0, expected)) {
        a.satisfied = false;
        a.detail = "recorded radius r_" + std::to_string(i) + " = " + fmt(it.radius) +
                   " differs from eps/(2^i delta0) = " + fmt(expected);
      }
      double m = it.radius - spec(zbar, it.z);
      for (PointIndex z : it.set) m = std::min(m, it.radius - spec(z, it.z));
      if (m < a.margin) {
        a.margin = m;
        a.witness = it.z;
      }
      if (i >= 1) margin_from_one = std::min(margin_from_one, m);
    }
    if (zbar != zstab) {
      // r_k -> 0 while z_k = z_stab, so the bound forces zbar = z_stab.
      a.margin = std::min(a.margin, -spec(zbar, zstab));
      a.witness = zstab;
    }
    if (a.margin < -tol) a.satisfied = false;
    if (a.detail.empty()) a.detail = "checked for every i >= 0 in the trace and its constant tail";
    cert.notes.push_back("claim a restricted to i >= 1: margin " + fmt(margin_from_one));
    cert.claims.push_back(std::move(a));
  }

  // (b) f(zbar) + sum_k delta_k d(zbar, z_k) <= f(z0)
  {
    const double margin = diff(f(z0), perturbed[zbar]);
    cert.claims.push_back({'b', margin >= -tol, margin, zbar, "series summed exactly"});
  }

  // (c) strict minimality of zbar for the perturbed function, by enumeration.
  {
    Claim c{'c', true, std::numeric_limits<double>::infinity(), std::nullopt,
            "enumerated over every z != zbar; strict, margin must exceed tolerance"};
    for (PointIndex z = 0; z < n; ++z) {
      if (z == zbar) continue;
      const double m = std::isinf(perturbed[zbar]) ? -std::numeric_limits<double>::infinity()
                                                   : perturbed[z] - perturbed[zbar];
      if (m < c.margin) {
        c.margin = m;
        c.witness = z;
      }
    }
    c.satisfied = c.margin > tol;
    cert.claims.push_back(std::move(c));
  }

  cert.notes.push_back(schedule.is_geometric()
                           ? "series tail past stabilization summed in closed form"
                           : "explicit delta list: the series ends with the listed weights");
  return cert;
}

Certificate verify_ekeland(const DistanceSpec& spec, const ExtendedObjective& f, double epsilon,
                           PointIndex z0, PointIndex zbar, double tol,
                           const ConstructionTrace* trace) {
  const std::size_t n = spec.size();
  if (f.size() != n || z0 >= n || zbar >= n) mismatch("inputs do not fit the space");
  Certificate cert{PrincipleKind::ekeland, zbar, {}, tol, {}};

  if (trace != nullptr) {
    check_trace_shape(*trace, PrincipleKind::ekeland, z0);
    replay(
        spec, f, *trace, [epsilon](std::size_t) { return epsilon; },
        [epsilon](std::size_t i) { return ekeland_slack(epsilon, i); }, false, tol);
    double derivable = std::numeric_limits<double>::infinity();
    double stated = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trace->iterates.size(); ++i) {
      const Iterate& it = trace->iterates[i];
      if (it.radius != ekeland_radius(i)) {
        mismatch("recorded radius r_" + std::to_string(i) + " differs from the derivable bound");
      }
      for (PointIndex z : it.set) {
        derivable = std::min(derivable, it.radius - spec(z, it.z));
        stated = std::min(stated, ekeland_slack(epsilon, i) - spec(z, it.z));
      }
    }
    cert.notes.push_back("radius law d(z, z_i) <= 2^-i (1 at i = 0): margin " + fmt(derivable));
    cert.notes.push_back("looser radius eps / 2^i: margin " + fmt(stated));
  }

  const double fz = f(zbar);
  {
    const double margin = 1.0 - spec(zbar, z0);
    cert.claims.push_back({'a', margin >= -tol, margin, z0, "d(zbar, z0) <= 1"});
  }
  {
    const double margin = std::isinf(fz) ? -std::numeric_limits<double>::infinity()
                                         : f(z0) - (fz + epsilon * spec(zbar, z0));
    cert.claims.push_back({'b', margin >= -tol, margin, z0, "f(zbar) + eps d(zbar, z0) <= f(z0)"});
  }
  {
    Claim c{'c', true, std::numeric_limits<double>::infinity(), std::nullopt,
            "f(z) + eps d(z, zbar) >= f(zbar) enumerated over every z != zbar"};
    for (PointIndex z = 0; z < n; ++z) {
      if (z == zbar) continue;
      const double m = diff(f(z) + epsilon * spec(z, zbar), fz);
      if (m < c.margin) {
        c.margin = m;
        c.witness = z;
      }
    }
    c.satisfied = c.margin >= -tol;
    cert.claims.push_back(std::move(c));
  }
  return cert;
}

}  // namespace vpe
