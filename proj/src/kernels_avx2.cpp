#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "vpe/kernels.hpp"

namespace vpe::kernels {
namespace {

void accumulate_scaled(std::span<double> acc, double weight, std::span<const double> column) {
  const __m256d w = _mm256_set1_pd(weight);
  std::size_t i = 0;
  for (; i + 4 <= acc.size(); i += 4) {
    const __m256d a = _mm256_loadu_pd(acc.data() + i);
    const __m256d c = _mm256_loadu_pd(column.data() + i);
    _mm256_storeu_pd(acc.data() + i, _mm256_add_pd(a, _mm256_mul_pd(w, c)));
  }
  for (; i < acc.size(); ++i) acc[i] += weight * column[i];
}

std::size_t restrict_le(Mask mask, std::span<const double> base, double weight,
                        std::span<const double> column, double threshold) {
  const __m256d w = _mm256_set1_pd(weight);
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= mask.size(); i += 4) {
    const __m256d b = _mm256_loadu_pd(base.data() + i);
    const __m256d c = _mm256_loadu_pd(column.data() + i);
    const __m256d le = _mm256_cmp_pd(_mm256_add_pd(b, _mm256_mul_pd(w, c)), t, _CMP_LE_OQ);
    const int bits = _mm256_movemask_pd(le);
    for (std::size_t l = 0; l < 4; ++l) {
      const bool keep = mask[i + l] != 0 && ((bits >> l) & 1) != 0;
      mask[i + l] = keep ? 1 : 0;
      count += keep;
    }
  }
  for (; i < mask.size(); ++i) {
    const bool keep = mask[i] != 0 && base[i] + weight * column[i] <= threshold;
    mask[i] = keep ? 1 : 0;
    count += keep;
  }
  return count;
}

ArgMin masked_argmin(std::span<const double> values, ConstMask mask) {
  const double inf = std::numeric_limits<double>::infinity();
  const __m256d vinf = _mm256_set1_pd(inf);
  __m256d vmin = vinf;
  std::size_t i = 0;
  for (; i + 4 <= values.size(); i += 4) {
    const __m256d keep = _mm256_castsi256_pd(_mm256_set_epi64x(
        mask[i + 3] ? -1 : 0, mask[i + 2] ? -1 : 0, mask[i + 1] ? -1 : 0, mask[i] ? -1 : 0));
    const __m256d v = _mm256_blendv_pd(vinf, _mm256_loadu_pd(values.data() + i), keep);
    vmin = _mm256_min_pd(vmin, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmin);
  double best = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < values.size(); ++i) {
    if (mask[i] != 0 && values[i] < best) best = values[i];
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (mask[j] != 0 && values[j] == best) return {values[j], j};
  }
  return {inf, values.size()};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= a.size(); i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (l0 + l2, l1 + l3)
  double sum = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", accumulate_scaled, restrict_le, masked_argmin,
                                 squared_distance};
  return table;
}

}  // namespace vpe::kernels
