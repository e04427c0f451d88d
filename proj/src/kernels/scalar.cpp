#include <cassert>

#include "vacfree/kernels.hpp"

// Complex products are spelled out instead of using operator* so the rounding
// sequence is explicit and matches the vector backends (std::complex multiplication
// may route through __muldc3 and its NaN recovery).
namespace vacfree::kernels::scalar {

void scale_real(std::span<const double> w, std::span<const cplx> x, std::span<cplx> y) {
  assert(w.size() == x.size() && x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = cplx(w[i] * x[i].real(), w[i] * x[i].imag());
  }
}

void sub_scaled(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double pr = xr * ar - xi * ai;
    const double pi = xi * ar + xr * ai;
    y[i] = cplx(y[i].real() - pr, y[i].imag() - pi);
  }
}

void combine(std::span<const cplx> x, std::span<const cplx> u, double s, cplx k,
             std::span<cplx> y) {
  assert(x.size() == u.size() && x.size() == y.size());
  const double kr = k.real();
  const double ki = k.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double tr = x[i].real() + s * u[i].real();
    const double ti = x[i].imag() + s * u[i].imag();
    y[i] = cplx(tr * kr - ti * ki, ti * kr + tr * ki);
  }
}

}  // namespace vacfree::kernels::scalar
