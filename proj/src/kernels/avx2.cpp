#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cassert>

#include "vacfree/kernels.hpp"

// Built with -mavx2 and without -mfma. A __m256d holds two complex doubles laid out
// (re0, im0, re1, im1), which is the std::complex<double> array layout.
namespace vacfree::kernels::avx2 {

namespace {

inline const double* raw(std::span<const cplx> v) {
  return reinterpret_cast<const double*>(v.data());
}
inline double* raw(std::span<cplx> v) { return reinterpret_cast<double*>(v.data()); }

// (xr*ar - xi*ai, xi*ar + xr*ai) per complex lane.
inline __m256d cmul(__m256d x, __m256d ar, __m256d ai) {
  const __m256d t1 = _mm256_mul_pd(x, ar);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(x, 0b0101), ai);
  return _mm256_addsub_pd(t1, t2);
}

}  // namespace

void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y) {
  assert(w.size() == x.size() && x.size() == y.size());
  const std::size_t n = x.size();
  const double* xs = raw(x);
  double* ys = raw(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // (w0, w0, w1, w1)
    const __m128d wp = _mm_loadu_pd(w.data() + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(wp), 0b01010000);
    _mm256_storeu_pd(ys + 2 * i, _mm256_mul_pd(ww, _mm256_loadu_pd(xs + 2 * i)));
  }
  for (; i < n; ++i) {
    y[i] = cplx(w[i] * x[i].real(), w[i] * x[i].imag());
  }
}

void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double* xs = raw(x);
  double* ys = raw(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = cmul(_mm256_loadu_pd(xs + 2 * i), ar, ai);
    _mm256_storeu_pd(ys + 2 * i, _mm256_sub_pd(_mm256_loadu_pd(ys + 2 * i), p));
  }
  if (i < n) {
    scalar::sub_scaled(a, x.subspan(i), y.subspan(i));
  }
}

void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y) {
  assert(x.size() == u.size() && x.size() == y.size());
  const std::size_t n = x.size();
  const double* xs = raw(x);
  const double* us = raw(u);
  double* ys = raw(y);
  const __m256d sv = _mm256_set1_pd(s);
  const __m256d kr = _mm256_set1_pd(k.real());
  const __m256d ki = _mm256_set1_pd(k.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(xs + 2 * i),
                                    _mm256_mul_pd(sv, _mm256_loadu_pd(us + 2 * i)));
    _mm256_storeu_pd(ys + 2 * i, cmul(t, kr, ki));
  }
  if (i < n) {
    scalar::combine(x.subspan(i), u.subspan(i), s, k, y.subspan(i));
  }
}

}  // namespace vacfree::kernels::avx2

#endif
