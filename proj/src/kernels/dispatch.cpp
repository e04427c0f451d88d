#include <array>
#include <atomic>
#include <vector>

#include "vacfree/errors.hpp"
#include "vacfree/kernels.hpp"

namespace vacfree::kernels {

namespace {

std::vector<Backend> detect() {
  std::vector<Backend> out{Backend::scalar};
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) {
    out.push_back(Backend::avx2);
  }
#endif
#if defined(__aarch64__)
  out.push_back(Backend::neon);
#endif
  return out;
}

const std::vector<Backend>& backends() {
  static const std::vector<Backend> list = detect();
  return list;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{backends().back()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

std::span<const Backend> available_backends() { return backends(); }

void set_backend(Backend b) {
  for (Backend have : backends()) {
    if (have == b) {
      current().store(b, std::memory_order_relaxed);
      return;
    }
  }
  throw ConfigError("kernel backend not available on this CPU: " + std::string(backend_name(b)));
}

void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y) {
  switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return avx2::scale_real(w, x, y);
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return neon::scale_real(w, x, y);
#endif
    default:
      return scalar::scale_real(w, x, y);
  }
}

void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return avx2::sub_scaled(a, x, y);
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return neon::sub_scaled(a, x, y);
#endif
    default:
      return scalar::sub_scaled(a, x, y);
  }
}

void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y) {
  switch (active_backend()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return avx2::combine(x, u, s, k, y);
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return neon::combine(x, u, s, k, y);
#endif
    default:
      return scalar::combine(x, u, s, k, y);
  }
}

}  // namespace vacfree::kernels
