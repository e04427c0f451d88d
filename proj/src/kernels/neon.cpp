#if defined(__aarch64__)

#include <arm_neon.h>

#include <cassert>

#include "vacfree/kernels.hpp"

// One float64x2_t holds a single complex double (re, im).
namespace vacfree::kernels::neon {

namespace {

inline const double* raw(std::span<const cplx> v) {
  return reinterpret_cast<const double*>(v.data());
}
inline double* raw(std::span<cplx> v) { return reinterpret_cast<double*>(v.data()); }

// (xr*ar - xi*ai, xi*ar + xr*ai); explicit mul then add/sub, never vfma.
inline float64x2_t cmul(float64x2_t x, double ar, double ai) {
  const float64x2_t t1 = vmulq_n_f64(x, ar);
  const float64x2_t t2 = vmulq_n_f64(vextq_f64(x, x, 1), ai);  // (xi*ai, xr*ai)
  const float64x2_t sign = {-1.0, 1.0};
  return vaddq_f64(t1, vmulq_f64(t2, sign));
}

}  // namespace

void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y) {
  assert(w.size() == x.size() && x.size() == y.size());
  const double* xs = raw(x);
  double* ys = raw(y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    vst1q_f64(ys + 2 * i, vmulq_n_f64(vld1q_f64(xs + 2 * i), w[i]));
  }
}

void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const double* xs = raw(x);
  double* ys = raw(y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float64x2_t p = cmul(vld1q_f64(xs + 2 * i), a.real(), a.imag());
    vst1q_f64(ys + 2 * i, vsubq_f64(vld1q_f64(ys + 2 * i), p));
  }
}

void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y) {
  assert(x.size() == u.size() && x.size() == y.size());
  const double* xs = raw(x);
  const double* us = raw(u);
  double* ys = raw(y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float64x2_t t = vaddq_f64(vld1q_f64(xs + 2 * i), vmulq_n_f64(vld1q_f64(us + 2 * i), s));
    vst1q_f64(ys + 2 * i, cmul(t, k.real(), k.imag()));
  }
}

}  // namespace vacfree::kernels::neon

#endif
