#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "vacfree/spectrum.hpp"

namespace vacfree {

using cplx = std::complex<double>;

enum class Strictness {
  strict,   // throw BoundaryError when amplitude would leave the window
  lenient,  // drop it
};

// Real coefficient pair (alpha, beta) for a ladder pair on {phi_p, p in Z}:
//   a phi_p = alpha_p phi_{p-1},   b phi_p = beta_{p+1} phi_{p+1}.
// The factorization contract alpha_p beta_p = eps_p is checked lazily
// (factorization_residual), so inconsistent sets can be built on purpose.
struct LadderCoefficients {
  std::function<double(Index)> alpha;
  std::function<double(Index)> beta;
  Spectrum spectrum;
  std::string label;
};

// Finite span element sum_p coeffs[p - lo] phi_p; zero outside the window.
struct TruncatedVector {
  IndexWindow window;
  std::vector<cplx> coeffs;

  explicit TruncatedVector(IndexWindow w) : window(w), coeffs(w.size()) {}
  TruncatedVector(IndexWindow w, std::vector<cplx> c);

  static TruncatedVector basis(Index p, IndexWindow w);

  cplx at(Index p) const { return window.contains(p) ? coeffs[window.offset(p)] : cplx{}; }
  cplx& operator[](Index p) { return coeffs[window.offset(p)]; }
};

cplx inner(const TruncatedVector& u, const TruncatedVector& v);  // conjugate-linear in u
double norm(const TruncatedVector& v);

enum class LadderOp { a, b, a_dag, b_dag };

// One off-diagonal band of a ladder operator restricted to a window.
//
// weights[j] couples indices lo+j and lo+j+1. For a lowering action (a, b^dag) the
// entry sits at (row lo+j, column lo+j+1); for a raising action (b, a^dag) at
// (row lo+j+1, column lo+j). boundary_rows lists the window indices whose image falls
// outside the window (lo for lowering, hi for raising).
struct BandedOperator {
  IndexWindow window;
  int offset = 0;  // row - column: -1 lowering, +1 raising
  std::vector<double> weights;
  std::vector<Index> boundary_rows;

  TruncatedVector apply(const TruncatedVector& v, Strictness s = Strictness::strict) const;
  // (row, column) entry, zero off the band.
  double entry(Index row, Index col) const;
};

TruncatedVector apply_lowering(const LadderCoefficients& c, const TruncatedVector& v,
                               Strictness s = Strictness::strict);
TruncatedVector apply_raising(const LadderCoefficients& c, const TruncatedVector& v,
                              Strictness s = Strictness::strict);
TruncatedVector apply_lowering_adjoint(const LadderCoefficients& c, const TruncatedVector& v,
                                       Strictness s = Strictness::strict);
TruncatedVector apply_raising_adjoint(const LadderCoefficients& c, const TruncatedVector& v,
                                      Strictness s = Strictness::strict);

BandedOperator build_matrix(const LadderCoefficients& c, LadderOp which, IndexWindow w);

// max_{p in w} |alpha_p beta_p - eps_p|
double factorization_residual(const LadderCoefficients& c, IndexWindow w);

// Diagonal entry of [a, b] on phi_p, i.e. alpha_{p+1} beta_{p+1} - alpha_p beta_p.
// Equals eps_{p+1} - eps_p whenever the pair factorizes the spectrum.
double commutator_ab_gap(const LadderCoefficients& c, Index p);

// Throws ConstraintError naming the first p in w with alpha_p == 0 or beta_p == 0.
void require_no_vacuum(const LadderCoefficients& c, IndexWindow w);

}  // namespace vacfree
