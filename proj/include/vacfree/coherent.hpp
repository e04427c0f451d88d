#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vacfree/doubled.hpp"
#include "vacfree/quadrature.hpp"

namespace vacfree {

// Radius of the disk where sum_k |z|^{2k} / (theta_k!)^2 converges. Unbounded is a
// distinct state, never a large float, so disk membership is an exact decision.
class ConvergenceRadius {
 public:
  static ConvergenceRadius finite(double rho, bool tail_monotone = true);
  static ConvergenceRadius unbounded();

  bool is_unbounded() const { return unbounded_; }
  double value() const;  // throws Error when unbounded
  bool tail_monotone() const { return tail_monotone_; }
  // |z| strictly inside the disk.
  bool contains(double r) const { return unbounded_ || r < rho_; }

 private:
  bool unbounded_ = false;
  double rho_ = 0.0;
  bool tail_monotone_ = true;
};

inline constexpr Index kDefaultRadiusProbe = 1024;
inline constexpr double kDefaultSeriesTol = 1e-14;

// Estimates lim theta_k from theta_1..theta_{k_probe}. Unbounded when every increment
// over the last quarter is positive and theta grows by at least 5% across it; otherwise
// the mean of the last quarter, with tail_monotone() false if the increments change sign.
ConvergenceRadius radius_of_convergence(const ThetaSequence& t,
                                        Index k_probe = kDefaultRadiusProbe);

// sum_{k<=K} r^{2k} / (theta_k!)^2, accumulated in log space.
struct NormalizationSeries {
  double log_sum = 0.0;    // log of the partial sum
  Index last_index = 0;    // K
  double tail_rel = 0.0;   // bound on (sum_{k>K} terms) / partial sum
  std::vector<double> log_terms;
};

// Throws DivergenceError when r is outside the disk, or when the series has not met
// `tol` within `max_terms` terms.
NormalizationSeries normalization_series(const ThetaSequence& t, double r, double tol,
                                         const ConvergenceRadius& rho,
                                         Index max_terms = 1 << 21);

// N(r) = (sum_k r^{2k} / (theta_k!)^2)^{-1/2}
double normalization(const ThetaSequence& t, double r, double tol = kDefaultSeriesTol);

struct CoherentState {
  cplx z;
  Index K = 0;
  PhiCoords coeffs;          // c_k = N(|z|) z^k / theta_k!, k = 0..K
  double normalization = 1;  // N(|z|); may underflow to 0 for huge |z|, see log_normalization
  double log_normalization = 0;
  double tail_bound = 0;     // >= sum_{k>K} |c_k|^2
};

CoherentState build_coherent(const ThetaSequence& t, cplx z, double tol = kDefaultSeriesTol);

// ||A Phi(z) - z Phi(z)|| / ||Phi(z)|| at truncation K.
double eigen_residual(const CoherentState& s, const ThetaSequence& t);

struct Atom {
  double r;
  double mass;
};

// Radial measure d lambda(r) on [0, R]: either a density or a finite set of atoms.
class RadialMeasure {
 public:
  enum class Kind { density, atomic };

  // `unbounded_tail`: the density is supported on [0, inf) and R is only a default; the
  // effective cut-off is chosen per moment order (effective_radius).
  static RadialMeasure density(std::function<double(double)> f, double R, bool unbounded_tail,
                               std::string label, std::vector<double> breakpoints = {});
  static RadialMeasure atomic(std::vector<Atom> atoms, std::string label);
  // Piecewise-linear density through (r_i, lambda_i); support [r_0, r_last].
  static RadialMeasure piecewise_linear(std::vector<std::pair<double, double>> points,
                                        std::string label);
  // Two-column CSV "r,density"; non-numeric lines (headers, comments) are skipped.
  static RadialMeasure from_csv(const std::filesystem::path& path);

  // (1/pi) r e^{-r^2} dr on [0, inf): 2 pi int r^{2k} d lambda = k!
  static RadialMeasure gaussian();
  // Single atom at r = 1 with mass 1/(2 pi): 2 pi int r^{2k} d lambda = 1 for every k.
  static RadialMeasure unit_circle_atom();

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double support_max() const { return R_; }
  bool unbounded_tail() const { return unbounded_tail_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double density_at(double r) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  Kind kind_ = Kind::density;
  std::function<double(double)> density_;
  std::vector<Atom> atoms_;
  double R_ = 0.0;
  bool unbounded_tail_ = false;
  std::string label_;
  std::vector<double> breakpoints_;
};

// Cut-off R for an unbounded-tail density so that int_R^inf r^{2 k_max} d lambda is
// below 1e-12 of the total, checked by comparing against [R, 2R].
double effective_radius(const RadialMeasure& m, Index k_max);

// Default grid for m that resolves r^{2 k_max}; panels follow density breakpoints.
QuadratureGrid default_grid(const RadialMeasure& m, Index k_max, int angular);

// 2 pi int r^{2k} d lambda(r) by quadrature (density) or exactly (atoms).
double measure_moment(const RadialMeasure& m, Index k, const QuadratureGrid& quad);

struct MomentRow {
  Index k;
  double moment;         // 2 pi int r^{2k} d lambda
  double target;         // (theta_k!)^2, +inf when not representable
  double log_target;     // 2 log(theta_k!)
  double residual;       // |moment - target| / max(1, target)
};

struct MomentReport {
  std::vector<MomentRow> rows;
  double residual = 0.0;           // max over rows
  bool support_on_boundary = false;  // some mass sits at r >= rho
  double doubling_change = 0.0;    // max relative change of moments under node doubling
};

// Throws QuadratureError when node doubling changes any moment by more than 1e-10
// (relative).
MomentReport moment_residual(const RadialMeasure& m, const ThetaSequence& t, Index k_max,
                             const QuadratureGrid& quad);

// int dnu <Phi_p, Phi(z)> <Phi(z), Phi_q> - delta_pq with
// dnu = N(|z|)^{-2} d lambda(r) d theta, evaluated on the grid.
cplx resolution_residual(const ThetaSequence& t, const RadialMeasure& m, Index p, Index q,
                         const QuadratureGrid& quad);

// All entries resolution_residual(p, q) for 0 <= p, q <= n_max, row-major, sharing one
// normalization per radial node.
std::vector<cplx> resolution_matrix(const ThetaSequence& t, const RadialMeasure& m, Index n_max,
                                    const QuadratureGrid& quad);

// Point mass in r^2 matching three moments mu_k = int r^{2k} d lambda, k = 0, 1, 2, when
// the Hankel determinant mu_0 mu_2 - mu_1^2 vanishes (relative tol). A nonnegative
// measure with that determinant zero is necessarily such a single atom.
std::optional<Atom> single_atom_from_moments(double mu0, double mu1, double mu2,
                                             double rel_tol = 1e-14);

struct UncertaintyProduct {
  double direct = 0;            // Delta X Delta P from operator moments
  double closed_form = 0;       // (||A^dag Phi||^2 - |z|^2) / 2
  double commutator_bound = 0;  // |<Phi, [X, P] Phi>| / 2
  double delta_x = 0;
  double delta_p = 0;
};

UncertaintyProduct uncertainty_product(const ThetaSequence& t, cplx z,
                                       double tol = kDefaultSeriesTol);

// direct == commutator_bound within 1e-8 absolute.
bool saturation_check(const ThetaSequence& t, cplx z, double tol = kDefaultSeriesTol);

}  // namespace vacfree
