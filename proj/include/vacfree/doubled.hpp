#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vacfree/ladder.hpp"

namespace vacfree {

// Element (upper, lower) of the direct sum H + H, with <f, g> = <f1, g1> + <f2, g2>.
struct DoubledVector {
  TruncatedVector upper;
  TruncatedVector lower;

  explicit DoubledVector(IndexWindow w) : upper(w), lower(w) {}
  DoubledVector(TruncatedVector u, TruncatedVector l);
};

cplx inner(const DoubledVector& f, const DoubledVector& g);
double norm(const DoubledVector& f);

// Coordinates x_k of sum_k x_k Phi_k, k = 0..size()-1.
using PhiCoords = std::vector<cplx>;

// Lowering weights theta_k of A on the folded family Phi_k = (phi_k, phi_{-k})/sqrt2.
// theta_0 = 0 always; theta_k for k >= 1 comes from `tail`.
class ThetaSequence {
 public:
  ThetaSequence(std::function<double(Index)> tail, std::string label);

  double operator()(Index k) const { return k == 0 ? 0.0 : tail_(k); }
  const std::string& label() const { return label_; }

  // theta_0 .. theta_K
  std::vector<double> values(Index K) const;
  // log(theta_k!) for k = 0..K, theta_0! = 1, theta_k! = theta_1 ... theta_k (magnitudes).
  std::vector<double> log_factorials(Index K) const;

 private:
  std::function<double(Index)> tail_;
  std::string label_;
};

// Phi_k = (phi_k, phi_{-k}) / sqrt2. Throws BoundaryError when +-k is outside w.
DoubledVector make_phi(Index k, IndexWindow w);

// (phi_1, -phi_{-1}): nonzero and orthogonal to every Phi_k.
DoubledVector nontotality_witness(IndexWindow w);

// P_{+-1} f = <phi_{+-1}, f> phi_{+-1} and Q = 1 - P, applied as rank-one updates.
TruncatedVector project_P(int sign, const TruncatedVector& v);
TruncatedVector project_Q(int sign, const TruncatedVector& v);

// alpha_k == beta_{1-k} (relative tolerance 1e-14) for 1 <= k <= k_max.
bool check_compatibility(const LadderCoefficients& c, Index k_max);
// First k in [k_lo, k_max] violating the above, if any.
std::optional<Index> first_incompatible(const LadderCoefficients& c, Index k_max,
                                        Index k_lo = 1);

// theta_k = alpha_k for k >= 1. Throws ConstraintError if compatibility fails on
// 1..check_up_to.
ThetaSequence theta_from_coeffs(const LadderCoefficients& c, Index check_up_to = 64);

// Folded frame <-> raw frame. to_phi_coords reads x_k = <Phi_k, f> for k = 0..K; the
// component of f orthogonal to span{Phi_k} is discarded.
PhiCoords to_phi_coords(const DoubledVector& f, Index K);
DoubledVector from_phi_coords(const PhiCoords& x, IndexWindow w);

// A Phi_k = theta_k Phi_{k-1}; A Phi_0 = 0.
PhiCoords apply_A(const ThetaSequence& t, const PhiCoords& x);
// A^dag Phi_k = theta_{k+1} Phi_{k+1}. The top coordinate has no room for its image:
// strict mode throws when it is occupied, lenient drops it.
PhiCoords apply_A_adjoint(const ThetaSequence& t, const PhiCoords& x,
                          Strictness s = Strictness::strict);

// A = diag(Q_{-1} a, Q_1 b) acting on the raw doubled vector.
DoubledVector apply_A_block(const LadderCoefficients& c, const DoubledVector& f,
                            Strictness s = Strictness::strict);

// theta_{k+1}^2 - theta_k^2, the diagonal of [A, A^dag] on Phi_k.
double commutator_AAdag_diag(const ThetaSequence& t, Index k);

// Diagonal operator on a window.
struct DiagonalOperator {
  IndexWindow window;
  std::vector<double> diag;

  TruncatedVector apply(const TruncatedVector& v) const;
};

// R phi_p = sqrt(p+1)/alpha_{p+1} phi_p (p >= 0), sqrt(1-p)/beta_p phi_p (p <= 0).
// Both branches meet at p = 0, which needs alpha_1 == beta_0; otherwise, or on any
// zero coefficient, throws ConstraintError.
DiagonalOperator build_R(const LadderCoefficients& c, IndexWindow w);

// A~ = diag(R Q_{-1} a, R Q_1 b), which lowers Phi_k with weight sqrt(k).
DoubledVector apply_A_tilde(const LadderCoefficients& c, const DoubledVector& f,
                            Strictness s = Strictness::strict);
PhiCoords apply_A_tilde(const LadderCoefficients& c, const PhiCoords& x);

}  // namespace vacfree
