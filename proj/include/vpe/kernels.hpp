#pragma once

// Data-parallel inner loops of the engine. Each kernel has a scalar reference
// and, where the target supports it, an AVX2 variant. Variants are required to
// produce bitwise-identical results to the scalar reference: reductions in the
// scalar code use the same four-lane accumulation order as the vector code.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace vpe::kernels {

/// Membership flags over a space; nonzero means "member".
using Mask = std::span<std::uint8_t>;
using ConstMask = std::span<const std::uint8_t>;

struct ArgMin {
  double value;
  std::size_t index;  // lowest index attaining `value`; == size when no member
};

struct KernelTable {
  std::string_view name;

  /// acc[i] += weight * column[i]
  void (*accumulate_scaled)(std::span<double> acc, double weight, std::span<const double> column);

  /// mask[i] &= (base[i] + weight * column[i] <= threshold); returns members left.
  std::size_t (*restrict_le)(Mask mask, std::span<const double> base, double weight,
                             std::span<const double> column, double threshold);

  /// Minimum of values over members, lowest index on ties.
  ArgMin (*masked_argmin)(std::span<const double> values, ConstMask mask);

  /// sum_i (a[i] - b[i])^2
  double (*squared_distance)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();

/// Best table for this machine. Setting VPE_FORCE_SCALAR=1 in the environment
/// pins the scalar reference.
const KernelTable& active();

}  // namespace vpe::kernels
