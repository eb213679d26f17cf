#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vpe/applications.hpp"
#include "vpe/distance.hpp"
#include "vpe/engine.hpp"
#include "vpe/objective.hpp"

namespace vpe {

/// Serializable description of a distance; `build` turns it into a validated
/// DistanceSpec on a space.
struct DistanceDescriptor {
  Family family = Family::table;
  std::optional<double> p;
  std::vector<std::vector<double>> matrix;
  std::shared_ptr<const DistanceDescriptor> inner;  // symmetrized
  double w_right = 1.0;
  double w_left = 1.0;

  DistanceSpec build(SpacePtr space) const;
  friend bool operator==(const DistanceDescriptor& a, const DistanceDescriptor& b);
};

struct ScheduleDescriptor {
  double epsilon = 1.0;
  double delta0 = 1.0;
  std::optional<double> gamma;  // geometric tail
  std::vector<double> deltas;   // explicit list, used when gamma is absent

  PerturbationSchedule build() const;
  friend bool operator==(const ScheduleDescriptor&, const ScheduleDescriptor&) = default;
};

/// One problem instance: a space, a distance and whichever sections the
/// requested command needs. Point-indexed tables are stored in space order.
struct ProblemFile {
  std::string name;
  std::uint64_t seed = 0;

  std::vector<std::string> points;
  std::optional<std::vector<std::vector<double>>> coords;
  DistanceDescriptor distance;

  std::optional<std::vector<double>> objective;
  std::optional<ScheduleDescriptor> schedule;
  std::optional<std::string> z0;
  std::optional<double> epsilon;
  std::optional<std::vector<std::pair<std::string, std::string>>> map;
  std::optional<std::vector<std::vector<double>>> bifunction;
  std::optional<std::vector<double>> potential;
  std::optional<std::vector<double>> epsilons;
  std::optional<double> caristi_eps;

  friend bool operator==(const ProblemFile& a, const ProblemFile& b);
};

/// Validated runtime objects built from a ProblemFile.
struct Instance {
  SpacePtr space;
  DistanceSpec distance;
};

Instance build_instance(const ProblemFile& problem);
ExtendedObjective build_objective(const ProblemFile& problem);
PotentialFn build_potential(const ProblemFile& problem);
SetValuedMap build_map(const ProblemFile& problem, const PointSpace& space);
Bifunction build_bifunction(const ProblemFile& problem);

/// JSON value for a real, with "+inf" / "-inf" for infinities.
nlohmann::json real_to_json(double v);

nlohmann::json to_json(const ProblemFile& problem);
/// Throws ParseError for shape/type problems (with the field path) and
/// ValidationError when a section breaks a module invariant.
ProblemFile problem_from_json(const nlohmann::json& doc);
/// Throws ParseError with the line number for malformed text.
ProblemFile parse_problem_text(const std::string& text);
ProblemFile parse_problem(const std::filesystem::path& path);

/// Canonical text: sorted keys, shortest round-trip numbers.
std::string canonical_text(const ProblemFile& problem);
/// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string digest(const ProblemFile& problem);

}  // namespace vpe
