// Portable reference kernels. These define the semantics the SIMD variants
// are tested against.

#include "kernels_internal.hpp"

namespace kendall3d::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void combine_scalar(const double* coeffs, std::size_t count, const double* rows, double* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t r = 0; r < count; ++r) axpy_scalar(coeffs[r], rows + r * n, out, n);
}

void gemv_scalar(const double* rows, std::size_t count, const double* x, double* out,
                 std::size_t n) {
  for (std::size_t r = 0; r < count; ++r) out[r] = dot_scalar(rows + r * n, x, n);
}

void syr_scalar(double alpha, const double* x, double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) axpy_scalar(alpha * x[i], x, a + i * n, n);
}

constexpr KernelTable kScalar{dot_scalar, axpy_scalar, combine_scalar, gemv_scalar, syr_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace kendall3d::kernels::detail
