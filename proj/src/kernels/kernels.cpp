// Runtime selection of the kernel backend and the span-checked entry points.

#include "kendall3d/kernels.hpp"

#include "kendall3d/errors.hpp"
#include "kernels_internal.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace kendall3d::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(KENDALL3D_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("KENDALL3D_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2) return Backend::Avx2;
  }
  return avx2 ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("kernel size mismatch: ") + what);
}

}  // namespace

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_available(backend))
    throw InvalidArgument("kernel backend '" + std::string(backend_name(backend)) +
                          "' is not available on this machine");
  current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

const KernelTable& table(Backend backend) {
#if defined(KENDALL3D_HAVE_AVX2)
  if (backend == Backend::Avx2) {
    if (!cpu_has_avx2()) throw InvalidArgument("avx2 kernels unavailable on this CPU");
    return detail::avx2_table();
  }
#else
  if (backend == Backend::Avx2) throw InvalidArgument("avx2 kernels not compiled in");
#endif
  return detail::scalar_table();
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot");
  return table(active_backend()).dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), "axpy");
  table(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void combine(std::span<const double> coeffs, std::span<const double> rows,
             std::span<double> out) {
  require(rows.size() == coeffs.size() * out.size(), "combine");
  table(active_backend()).combine(coeffs.data(), coeffs.size(), rows.data(), out.data(),
                                  out.size());
}

void gemv(std::span<const double> rows, std::span<const double> x, std::span<double> out) {
  require(rows.size() == out.size() * x.size(), "gemv");
  table(active_backend()).gemv(rows.data(), out.size(), x.data(), out.data(), x.size());
}

void syr(double alpha, std::span<const double> x, std::span<double> a) {
  require(a.size() == x.size() * x.size(), "syr");
  table(active_backend()).syr(alpha, x.data(), a.data(), x.size());
}

}  // namespace kendall3d::kernels
