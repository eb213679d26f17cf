#include "vpe/sequential.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "vpe/error.hpp"

namespace vpe {

PointSet::PointSet(std::vector<PointIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

PointSet PointSet::from_mask(kernels::ConstMask mask) {
  PointSet out;
  for (PointIndex i = 0; i < mask.size(); ++i) {
    if (mask[i] != 0) out.members_.push_back(i);
  }
  return out;
}

bool PointSet::contains(PointIndex x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

bool PointSet::subset_of(const PointSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

PointSet PointSet::intersect(const PointSet& other) const {
  PointSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

void SequenceTrace::validate(std::size_t space_size) const {
  if (terms.empty()) throw Error(ErrorKind::BadParameter, "sequence prefix is empty");
  for (PointIndex t : terms) {
    if (t >= space_size) throw Error(ErrorKind::UnknownPoint, "sequence term outside the space");
  }
  if (constant_from) {
    const std::size_t k = *constant_from;
    if (k >= terms.size()) {
      throw Error(ErrorKind::BadParameter, "constant tail starts beyond the stored prefix");
    }
    for (std::size_t j = k; j < terms.size(); ++j) {
      if (terms[j] != terms[k]) {
        throw Error(ErrorKind::BadParameter,
                    "prefix is not constant from index " + std::to_string(k));
      }
    }
  }
}

PointSet right_ball(const DistanceSpec& spec, PointIndex x, double r) {
  if (x >= spec.size()) throw Error(ErrorKind::UnknownPoint, "ball center outside the space");
  if (!(r > 0.0)) throw Error(ErrorKind::BadParameter, "ball radius must be positive");
  std::vector<PointIndex> members;
  for (PointIndex y = 0; y < spec.size(); ++y) {
    if (spec(y, x) < r) members.push_back(y);
  }
  return PointSet(std::move(members));
}

std::vector<double> cauchy_modulus(const DistanceSpec& spec, const SequenceTrace& seq, Side side) {
  seq.validate(spec.size());
  const auto& t = seq.terms;
  std::vector<double> modulus(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double sup = 0.0;
    for (std::size_t j = i; j < t.size(); ++j) {
      sup = std::max(sup, side == Side::right ? spec(t[j], t[i]) : spec(t[i], t[j]));
    }
    modulus[i] = sup;
  }
  return modulus;
}

Verdict converges_to(const DistanceSpec& spec, const SequenceTrace& seq, PointIndex x, Side side,
                     [[maybe_unused]] double tol) {
  seq.validate(spec.size());
  if (x >= spec.size()) throw Error(ErrorKind::UnknownPoint, "limit candidate outside the space");
  // A finite prefix never settles convergence on its own.
  if (!seq.constant_from) return Verdict::inconclusive;
  // Eventually constant at c: d(x, c) (or d(c, x)) is the limit, zero iff c = x.
  const PointIndex c = seq.terms[*seq.constant_from];
  const double limit = side == Side::right ? spec(x, c) : spec(c, x);
  return limit == 0.0 ? Verdict::yes : Verdict::no;
}

PointSet sublevel_set(const ExtendedObjective& f, double lambda) {
  std::vector<PointIndex> members;
  for (PointIndex x = 0; x < f.size(); ++x) {
    if (f.finite_at(x) && f(x) <= lambda) members.push_back(x);
  }
  return PointSet(std::move(members));
}

CantorResult cantor_intersect(const DistanceSpec& spec, const NestedFamily& family,
                              Containment containment, std::optional<double> cutoff) {
  const auto fail = [](const std::string& why) {
    throw Error(ErrorKind::HypothesisViolation, why);
  };
  const std::size_t len = family.sets.size();
  if (len == 0) fail("nested family is empty");
  if (family.centers.size() != len || family.radii.size() != len) {
    fail("sets, centers and radii must have equal length");
  }

  for (std::size_t i = 0; i < len; ++i) {
    const PointSet& s = family.sets[i];
    const std::string at = " at index " + std::to_string(i);
    if (s.empty()) fail("empty set" + at);
    if (s.members().back() >= spec.size()) fail("set member outside the space" + at);
    if (!(family.radii[i] > 0.0)) fail("non-positive radius" + at);
    if (i > 0 && !s.subset_of(family.sets[i - 1])) fail("sets are not nested" + at);
    const PointIndex c = family.centers[i];
    if (!s.contains(c)) fail("center outside its set" + at);
    for (PointIndex y : s) {
      const double dist = spec(y, c);
      const bool inside =
          containment == Containment::strict ? dist < family.radii[i] : dist <= family.radii[i];
      if (!inside) {
        fail("ball containment broken" + at + ": d(" + spec.space().id(y) + "," +
             spec.space().id(c) + ") = " + std::to_string(dist));
      }
    }
  }

  const double limit_radius = cutoff.value_or(0.5 * min_positive_distance(spec));
  if (!(family.radii.back() < limit_radius)) {
    fail("radii do not descend below the cutoff " + std::to_string(limit_radius));
  }

  // Nested, so the intersection is the last set.
  const PointSet& last = family.sets.back();
  if (last.size() != 1) {
    throw Error(ErrorKind::NonSingleton,
                "intersection has " + std::to_string(last.size()) + " points");
  }
  return {last.members().front(), true};
}

}  // namespace vpe
