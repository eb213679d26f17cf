#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "vpe/distance.hpp"
#include "vpe/problem.hpp"

namespace vpe {

enum class GenerateMode { bp, ekeland, caristi, ep };

std::string_view to_string(GenerateMode mode);
std::optional<GenerateMode> mode_from_string(std::string_view name);

/// Deterministic random instance whose hypotheses hold by construction:
///  - bp / ekeland: f uniform on [0, 100], random z0 with an admissible
///    epsilon; bp adds delta0 and gamma = 1/2;
///  - caristi: phi uniform on [0, 100] and T(x) a random nonempty subset of
///    { y : phi(y) <= phi(x) - d(x, y) }, which always contains x;
///  - ep: phi uniform on [0, 100], F(x, y) = phi(y) - phi(x) + nonnegative noise.
/// Table distances have zero diagonals and off-diagonals in (0, 10].
/// Throws BadParameter for size < 2 or a family that cannot be generated.
ProblemFile generate_instance(std::uint64_t seed, std::size_t size, Family family, GenerateMode mode);

}  // namespace vpe
