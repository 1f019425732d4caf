#include "cohcat/kernels.hpp"

#include <cmath>
#include <cstddef>

#if defined(COHCAT_BUILD_AVX2)
#include <immintrin.h>
#endif

namespace cohcat::kernels::avx2 {

#if defined(COHCAT_BUILD_AVX2)

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double sqrt_product_sum(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(prod));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::sqrt(a[i] * b[i]);
  return sum;
}

// Both series below peel the m % 4 largest indices (the smallest terms)
// first, then walk the rest downward four at a time with lanes
// {j, j-1, j-2, j-3}.

double harmonic_desc(std::uint64_t m) {
  double head = 0.0;
  std::uint64_t j = m;
  for (; j % 4 != 0; --j) head += 1.0 / static_cast<double>(j);

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d jv = _mm256_set_pd(static_cast<double>(j) - 3.0, static_cast<double>(j) - 2.0,
                             static_cast<double>(j) - 1.0, static_cast<double>(j));
  __m256d acc = _mm256_setzero_pd();
  for (; j >= 4; j -= 4) {
    acc = _mm256_add_pd(acc, _mm256_div_pd(one, jv));
    jv = _mm256_sub_pd(jv, step);
  }
  return head + hsum(acc);
}

double embezzle_overlap(std::uint64_t m, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  double head = 0.0;
  std::uint64_t j = m;
  for (; j % 4 != 0; --j) {
    const auto block = static_cast<double>((j + n - 1) / n);
    head += 1.0 / std::sqrt(static_cast<double>(j) * nd * block);
  }

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  const __m256d nv = _mm256_set1_pd(nd);
  __m256d jv = _mm256_set_pd(static_cast<double>(j) - 3.0, static_cast<double>(j) - 2.0,
                             static_cast<double>(j) - 1.0, static_cast<double>(j));
  __m256d acc = _mm256_setzero_pd();
  for (; j >= 4; j -= 4) {
    // ceil(j / n) == floor((j - 1) / n) + 1; the quotient of exact integers
    // is either exact or at least 1/n away from the next integer.
    const __m256d block = _mm256_add_pd(_mm256_floor_pd(_mm256_div_pd(_mm256_sub_pd(jv, one), nv)), one);
    const __m256d denom = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_mul_pd(jv, nv), block));
    acc = _mm256_add_pd(acc, _mm256_div_pd(one, denom));
    jv = _mm256_sub_pd(jv, step);
  }
  return head + hsum(acc);
}

#else

double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
double abs_diff_sum(std::span<const double> a, std::span<const double> b) { return scalar::abs_diff_sum(a, b); }
double sqrt_product_sum(std::span<const double> a, std::span<const double> b) {
  return scalar::sqrt_product_sum(a, b);
}
double harmonic_desc(std::uint64_t m) { return scalar::harmonic_desc(m); }
double embezzle_overlap(std::uint64_t m, std::uint64_t n) { return scalar::embezzle_overlap(m, n); }

#endif

}  // namespace cohcat::kernels::avx2
