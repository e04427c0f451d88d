#pragma once

#include <complex>
#include <span>
#include <string_view>

// Elementwise inner loops used by the ladder and doubled-space operators.
//
// Each kernel has a scalar reference and, where the target supports it, an AVX2 or
// NEON variant. Variants perform the same IEEE operations in the same order (no FMA),
// so every backend produces bitwise-identical output. The dispatching entry points
// pick a backend once, on first use, from the running CPU.
namespace vacfree::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

// Backend the dispatching entry points use.
Backend active_backend();

// Backends this binary can run on the current CPU (scalar is always first).
std::span<const Backend> available_backends();

// Force a backend (tests, benchmarks). Throws ConfigError if not available.
void set_backend(Backend b);

// y[i] = w[i] * x[i]
void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y);

// y[i] -= a * x[i]
void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y);

// y[i] = (x[i] + s * u[i]) * k, the building block of X = (A + A^dag)/sqrt2 and
// P = (A - A^dag)/(sqrt2 i) once A and A^dag images are formed.
void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y);

namespace scalar {
void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y);
void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y);
void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y);
void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y);
void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y);
void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y);
void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y);
}  // namespace neon
#endif

}  // namespace vacfree::kernels
