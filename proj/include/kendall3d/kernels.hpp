// kernels.hpp — flat double-precision kernels behind the geometry code.
//
// Each kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant. The variant is chosen once at runtime from the CPU's
// feature flags (override with KENDALL3D_KERNELS=scalar|avx2|auto) and can be
// switched explicitly with set_backend(). Variants agree to rounding: they may
// differ in summation order and FMA contraction, never in the operation.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace kendall3d::kernels {

enum class Backend { Scalar, Avx2 };

/// Function table for one backend. Layout conventions:
///  - dot:     returns sum_i a[i] * b[i]; a and b have equal length.
///  - axpy:    y += alpha * x.
///  - combine: out = sum_r coeffs[r] * rows[r*n .. r*n+n), n = out.size().
///  - gemv:    out[r] = dot(rows[r*n .. r*n+n), x), n = x.size().
///  - syr:     a += alpha * x * x^T, a is n×n row-major, n = x.size().
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*combine)(const double* coeffs, std::size_t count, const double* rows,
                  double* out, std::size_t n);
  void (*gemv)(const double* rows, std::size_t count, const double* x, double* out,
               std::size_t n);
  void (*syr)(double alpha, const double* x, double* a, std::size_t n);
};

bool backend_available(Backend backend) noexcept;
Backend active_backend() noexcept;
/// Throws InvalidArgument when the backend is not compiled in or the CPU
/// lacks the instructions.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend) noexcept;

const KernelTable& table(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void combine(std::span<const double> coeffs, std::span<const double> rows,
             std::span<double> out);
void gemv(std::span<const double> rows, std::span<const double> x, std::span<double> out);
void syr(double alpha, std::span<const double> x, std::span<double> a);

}  // namespace kendall3d::kernels
