#include "vacfree/ladder.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "vacfree/errors.hpp"
#include "vacfree/kernels.hpp"
#include "vacfree/summation.hpp"

namespace vacfree {

TruncatedVector::TruncatedVector(IndexWindow w, std::vector<cplx> c)
    : window(w), coeffs(std::move(c)) {
  if (coeffs.size() != window.size()) {
    throw ConfigError("coefficient count does not match window size");
  }
}

TruncatedVector TruncatedVector::basis(Index p, IndexWindow w) {
  if (!w.contains(p)) {
    throw BoundaryError("basis index " + std::to_string(p) + " outside window");
  }
  TruncatedVector v(w);
  v[p] = 1.0;
  return v;
}

cplx inner(const TruncatedVector& u, const TruncatedVector& v) {
  const Index lo = std::max(u.window.lo, v.window.lo);
  const Index hi = std::min(u.window.hi, v.window.hi);
  CompensatedComplexSum acc;
  for (Index p = lo; p <= hi; ++p) {
    acc.add(std::conj(u.at(p)) * v.at(p));
  }
  return acc.value();
}

double norm(const TruncatedVector& v) {
  CompensatedSum acc;
  for (const cplx& x : v.coeffs) {
    acc.add(std::norm(x));
  }
  return std::sqrt(acc.value());
}

TruncatedVector BandedOperator::apply(const TruncatedVector& v, Strictness s) const {
  if (!(v.window == window)) {
    throw ConfigError("vector window does not match operator window");
  }
  TruncatedVector out(window);
  for (Index p : boundary_rows) {
    if (v.at(p) != cplx{} && s == Strictness::strict) {
      std::ostringstream msg;
      msg << "image of index " << p << " leaves window [" << window.lo << ", " << window.hi
          << "]";
      throw BoundaryError(msg.str());
    }
  }
  const std::size_t n = window.size();
  if (n < 2) {
    return out;
  }
  std::span<const cplx> in(v.coeffs);
  std::span<cplx> res(out.coeffs);
  if (offset < 0) {
    kernels::scale_real(weights, in.subspan(1), res.first(n - 1));
  } else {
    kernels::scale_real(weights, in.first(n - 1), res.subspan(1));
  }
  return out;
}

double BandedOperator::entry(Index row, Index col) const {
  if (!window.contains(row) || !window.contains(col) || row - col != offset) {
    return 0.0;
  }
  const Index j = std::min(row, col) - window.lo;
  return weights[static_cast<std::size_t>(j)];
}

BandedOperator build_matrix(const LadderCoefficients& c, LadderOp which, IndexWindow w) {
  BandedOperator op;
  op.window = w;
  const bool lowering = which == LadderOp::a || which == LadderOp::b_dag;
  op.offset = lowering ? -1 : +1;
  const bool uses_alpha = which == LadderOp::a || which == LadderOp::a_dag;
  op.weights.reserve(w.size() - 1);
  for (Index p = w.lo + 1; p <= w.hi; ++p) {
    op.weights.push_back(uses_alpha ? c.alpha(p) : c.beta(p));
  }
  op.boundary_rows.push_back(lowering ? w.lo : w.hi);
  return op;
}

TruncatedVector apply_lowering(const LadderCoefficients& c, const TruncatedVector& v,
                               Strictness s) {
  return build_matrix(c, LadderOp::a, v.window).apply(v, s);
}

TruncatedVector apply_raising(const LadderCoefficients& c, const TruncatedVector& v,
                              Strictness s) {
  return build_matrix(c, LadderOp::b, v.window).apply(v, s);
}

TruncatedVector apply_lowering_adjoint(const LadderCoefficients& c, const TruncatedVector& v,
                                       Strictness s) {
  return build_matrix(c, LadderOp::a_dag, v.window).apply(v, s);
}

TruncatedVector apply_raising_adjoint(const LadderCoefficients& c, const TruncatedVector& v,
                                      Strictness s) {
  return build_matrix(c, LadderOp::b_dag, v.window).apply(v, s);
}

double factorization_residual(const LadderCoefficients& c, IndexWindow w) {
  double worst = 0.0;
  for (Index p = w.lo; p <= w.hi; ++p) {
    worst = std::max(worst, std::abs(c.alpha(p) * c.beta(p) - c.spectrum(p)));
  }
  return worst;
}

double commutator_ab_gap(const LadderCoefficients& c, Index p) {
  // ab phi_p = alpha_{p+1} beta_{p+1} phi_p,  ba phi_p = alpha_p beta_p phi_p
  return c.alpha(p + 1) * c.beta(p + 1) - c.alpha(p) * c.beta(p);
}

void require_no_vacuum(const LadderCoefficients& c, IndexWindow w) {
  for (Index p = w.lo; p <= w.hi; ++p) {
    if (c.alpha(p) == 0.0 || c.beta(p) == 0.0) {
      throw ConstraintError("zero ladder coefficient at p = " + std::to_string(p) + " (" +
                            c.label + ")");
    }
  }
}

}  // namespace vacfree
