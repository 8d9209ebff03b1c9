// AVX2/FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a CPU feature check.

#include "kernels_internal.hpp"

#include <immintrin.h>

namespace kendall3d::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void combine_avx2(const double* coeffs, std::size_t count, const double* rows, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t r = 0; r < count; ++r) axpy_avx2(coeffs[r], rows + r * n, out, n);
}

void gemv_avx2(const double* rows, std::size_t count, const double* x, double* out,
               std::size_t n) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_avx2(rows + r * n, x, n);
}

void syr_avx2(double alpha, const double* x, double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) axpy_avx2(alpha * x[i], x, a + i * n, n);
}

constexpr KernelTable kAvx2{dot_avx2, axpy_avx2, combine_avx2, gemv_avx2, syr_avx2};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace kendall3d::kernels::detail
