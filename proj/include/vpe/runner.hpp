#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vpe/certificate.hpp"
#include "vpe/problem.hpp"

namespace vpe {

struct RunFlags {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  Picker::Kind picker = Picker::Kind::exact;
  std::size_t max_iter = 0;
  std::optional<std::array<double, 3>> schedule;  // eps, delta0, gamma
  std::optional<std::size_t> samples;             // check-distance sampling budget
};

enum class RunVerdict { verified, hypothesis_violation, verification_failure, input_error };

std::string_view to_string(RunVerdict verdict);

/// 0 verified, 1 hypothesis violation, 2 verification failure, 3 parse or
/// validation error.
int exit_code(RunVerdict verdict);

/// Result of one command. `document` is the machine-readable report written
/// by --out; it embeds the canonical problem, its digest, the flags and the
/// certificate, and is deterministic for a given (problem, flags).
struct RunReport {
  std::string command;
  RunVerdict verdict = RunVerdict::verified;
  nlohmann::json document;
  std::string human;
  double wall_ms = 0.0;
};

/// Commands: check-distance, bp, ekeland, caristi, ep.
RunReport run(std::string_view command, const ProblemFile& problem, const RunFlags& flags);

/// Re-checks a stored report without rerunning the construction.
RunReport verify_stored(const nlohmann::json& stored);

nlohmann::json certificate_to_json(const Certificate& cert, const PointSpace& space);
nlohmann::json trace_to_json(const ConstructionTrace& trace, const PointSpace& space);
ConstructionTrace trace_from_json(const nlohmann::json& doc, const PointSpace& space);

}  // namespace vpe
