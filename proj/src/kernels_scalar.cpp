#include <limits>

#include "vpe/kernels.hpp"

namespace vpe::kernels {
namespace {

void accumulate_scaled(std::span<double> acc, double weight, std::span<const double> column) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * column[i];
}

std::size_t restrict_le(Mask mask, std::span<const double> base, double weight,
                        std::span<const double> column, double threshold) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const bool keep = mask[i] != 0 && base[i] + weight * column[i] <= threshold;
    mask[i] = keep ? 1 : 0;
    count += keep;
  }
  return count;
}

ArgMin masked_argmin(std::span<const double> values, ConstMask mask) {
  ArgMin best{std::numeric_limits<double>::infinity(), values.size()};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i] != 0 && (best.index == values.size() || values[i] < best.value)) {
      best = {values[i], i};
    }
  }
  return best;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double diff = a[i + l] - b[i + l];
      lane[l] += diff * diff;
    }
  }
  double sum = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", accumulate_scaled, restrict_le, masked_argmin,
                                 squared_distance};
  return table;
}

}  // namespace vpe::kernels
