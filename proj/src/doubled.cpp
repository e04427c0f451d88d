#include "vacfree/doubled.hpp"

#include <cmath>
#include <utility>

#include "vacfree/errors.hpp"
#include "vacfree/kernels.hpp"

namespace vacfree {

namespace {

constexpr double kCompatRelTol = 1e-14;

bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace

DoubledVector::DoubledVector(TruncatedVector u, TruncatedVector l)
    : upper(std::move(u)), lower(std::move(l)) {}

cplx inner(const DoubledVector& f, const DoubledVector& g) {
  return inner(f.upper, g.upper) + inner(f.lower, g.lower);
}

double norm(const DoubledVector& f) {
  const double u = norm(f.upper);
  const double l = norm(f.lower);
  return std::sqrt(u * u + l * l);
}

ThetaSequence::ThetaSequence(std::function<double(Index)> tail, std::string label)
    : tail_(std::move(tail)), label_(std::move(label)) {}

std::vector<double> ThetaSequence::values(Index K) const {
  std::vector<double> out(static_cast<std::size_t>(K + 1));
  for (Index k = 0; k <= K; ++k) {
    out[static_cast<std::size_t>(k)] = (*this)(k);
  }
  return out;
}

std::vector<double> ThetaSequence::log_factorials(Index K) const {
  std::vector<double> out(static_cast<std::size_t>(K + 1));
  double acc = 0.0;
  for (Index k = 1; k <= K; ++k) {
    acc += std::log(std::abs(tail_(k)));
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

DoubledVector make_phi(Index k, IndexWindow w) {
  if (k < 0 || !w.contains(k) || !w.contains(-k)) {
    throw BoundaryError("window too small for Phi_" + std::to_string(k));
  }
  DoubledVector f(w);
  f.upper[k] = M_SQRT1_2;
  f.lower[-k] = M_SQRT1_2;
  return f;
}

DoubledVector nontotality_witness(IndexWindow w) {
  if (!w.contains(1) || !w.contains(-1)) {
    throw BoundaryError("window must contain +-1");
  }
  DoubledVector f(w);
  f.upper[1] = 1.0;
  f.lower[-1] = -1.0;
  return f;
}

TruncatedVector project_P(int sign, const TruncatedVector& v) {
  const Index q = sign > 0 ? 1 : -1;
  TruncatedVector out(v.window);
  if (v.window.contains(q)) {
    out[q] = v.at(q);
  }
  return out;
}

TruncatedVector project_Q(int sign, const TruncatedVector& v) {
  const Index q = sign > 0 ? 1 : -1;
  TruncatedVector out = v;
  if (v.window.contains(q)) {
    out[q] = 0.0;
  }
  return out;
}

std::optional<Index> first_incompatible(const LadderCoefficients& c, Index k_max, Index k_lo) {
  for (Index k = k_lo; k <= k_max; ++k) {
    if (!close_rel(c.alpha(k), c.beta(1 - k), kCompatRelTol)) {
      return k;
    }
  }
  return std::nullopt;
}

bool check_compatibility(const LadderCoefficients& c, Index k_max) {
  return !first_incompatible(c, k_max).has_value();
}

ThetaSequence theta_from_coeffs(const LadderCoefficients& c, Index check_up_to) {
  if (auto bad = first_incompatible(c, check_up_to)) {
    throw ConstraintError("alpha_k != beta_{1-k} at k = " + std::to_string(*bad) + " (" +
                          c.label + ")");
  }
  auto alpha = c.alpha;
  return ThetaSequence([alpha](Index k) { return alpha(k); }, c.label);
}

PhiCoords to_phi_coords(const DoubledVector& f, Index K) {
  PhiCoords x(static_cast<std::size_t>(K + 1));
  for (Index k = 0; k <= K; ++k) {
    x[static_cast<std::size_t>(k)] = (f.upper.at(k) + f.lower.at(-k)) * M_SQRT1_2;
  }
  return x;
}

DoubledVector from_phi_coords(const PhiCoords& x, IndexWindow w) {
  const Index K = static_cast<Index>(x.size()) - 1;
  if (K >= 0 && (!w.contains(K) || !w.contains(-K))) {
    throw BoundaryError("window too small for Phi-coordinates up to " + std::to_string(K));
  }
  DoubledVector f(w);
  for (Index k = 0; k <= K; ++k) {
    const cplx v = x[static_cast<std::size_t>(k)] * M_SQRT1_2;
    f.upper[k] += v;
    f.lower[-k] += v;
  }
  return f;
}

PhiCoords apply_A(const ThetaSequence& t, const PhiCoords& x) {
  PhiCoords out(x.size());
  if (x.size() < 2) {
    return out;
  }
  const Index K = static_cast<Index>(x.size()) - 1;
  const std::vector<double> th = t.values(K);
  std::span<const cplx> in(x);
  kernels::scale_real(std::span<const double>(th).subspan(1), in.subspan(1),
                      std::span<cplx>(out).first(x.size() - 1));
  return out;
}

PhiCoords apply_A_adjoint(const ThetaSequence& t, const PhiCoords& x, Strictness s) {
  PhiCoords out(x.size());
  if (x.empty()) {
    return out;
  }
  if (s == Strictness::strict && x.back() != cplx{}) {
    throw BoundaryError("A^dag image of the top Phi-coordinate leaves the truncation");
  }
  if (x.size() < 2) {
    return out;
  }
  const Index K = static_cast<Index>(x.size()) - 1;
  const std::vector<double> th = t.values(K);
  std::span<const cplx> in(x);
  kernels::scale_real(std::span<const double>(th).subspan(1), in.first(x.size() - 1),
                      std::span<cplx>(out).subspan(1));
  return out;
}

DoubledVector apply_A_block(const LadderCoefficients& c, const DoubledVector& f, Strictness s) {
  return DoubledVector(project_Q(-1, apply_lowering(c, f.upper, s)),
                       project_Q(+1, apply_raising(c, f.lower, s)));
}

double commutator_AAdag_diag(const ThetaSequence& t, Index k) {
  const double hi = t(k + 1);
  const double lo = t(k);
  return hi * hi - lo * lo;
}

TruncatedVector DiagonalOperator::apply(const TruncatedVector& v) const {
  if (!(v.window == window)) {
    throw ConfigError("vector window does not match operator window");
  }
  TruncatedVector out(window);
  kernels::scale_real(diag, v.coeffs, out.coeffs);
  return out;
}

DiagonalOperator build_R(const LadderCoefficients& c, IndexWindow w) {
  const double a1 = c.alpha(1);
  const double b0 = c.beta(0);
  if (!close_rel(a1, b0, kCompatRelTol)) {
    throw ConstraintError("R is not uniquely defined on phi_0: alpha_1 != beta_0 (" + c.label +
                          ")");
  }
  DiagonalOperator r{w, std::vector<double>(w.size())};
  for (Index p = w.lo; p <= w.hi; ++p) {
    const double coeff = p >= 0 ? c.alpha(p + 1) : c.beta(p);
    if (coeff == 0.0) {
      throw ConstraintError("zero coefficient while building R at p = " + std::to_string(p));
    }
    const double root = p >= 0 ? std::sqrt(static_cast<double>(p + 1))
                               : std::sqrt(static_cast<double>(1 - p));
    r.diag[w.offset(p)] = root / coeff;
  }
  return r;
}

DoubledVector apply_A_tilde(const LadderCoefficients& c, const DoubledVector& f, Strictness s) {
  const DiagonalOperator r = build_R(c, f.upper.window);
  const DoubledVector af = apply_A_block(c, f, s);
  return DoubledVector(r.apply(af.upper), r.apply(af.lower));
}

PhiCoords apply_A_tilde(const LadderCoefficients& c, const PhiCoords& x) {
  const Index K = static_cast<Index>(x.size()) - 1;
  const IndexWindow w(-(K + 1), K + 1);
  return to_phi_coords(apply_A_tilde(c, from_phi_coords(x, w)), K);
}

}  // namespace vacfree
