#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vacfree/doubled.hpp"
#include "vacfree/ladder.hpp"
#include "vacfree/spectrum.hpp"

// Graphene at the K Dirac point in a constant magnetic field, in a fixed-n1 sector.
//
// Energies are measured in units of c = v_F / xi with xi = sqrt(2 / eB). The shifted
// Hamiltonian H = H_K + c 1 has eigenvalues
//   eps_p = c (1 + 2 sqrt p)   p >= 1
//           c                  p = 0
//           c (1 - 2 sqrt -p)  p <= -1
// on the relabelled eigenvectors phi_p of H_K, none of them zero. The transpose block
// H_K' = H_K^T has the same eigenvalues and is not represented separately.
namespace vacfree::graphene {

struct GrapheneParams {
  double c = 1.0;  // v_F / xi
  int n1 = 0;      // degeneracy label, carried as metadata only

  void validate() const;  // throws ConfigError unless c > 0
};

enum class Choice { one = 1, two = 2, three = 3 };
enum class Branch { plus, minus };

Choice parse_choice(int choice);  // throws ConfigError

Spectrum graphene_spectrum(const GrapheneParams& p);

// Unshifted Landau ladder of H_K on the same labelling: 2c sqrt p, 0, -2c sqrt -p.
// Has a zero at p = 0, hence is not factorizable until shifted by c.
Spectrum landau_ladder_spectrum(const GrapheneParams& p);

// E^(+-) = +-2 c sqrt(n2)
double landau_energy(const GrapheneParams& p, int n2, Branch sign);

// The three factorizations alpha_p beta_p = eps_p with alpha_k = beta_{1-k}:
//   1: alpha = 1 (p >= 1),            beta = 1 (p <= 0)
//   2: beta = 1 (p >= 1),             alpha_p = (1 - 2 sqrt -p)/(1 + 2 sqrt(1-p)) (p <= 0)
//   3: alpha_p = sqrt p (p >= 1),     beta_p = sqrt(1 - p) (p <= 0)
LadderCoefficients coefficients_for_choice(const GrapheneParams& p, Choice choice);

ThetaSequence theta_for_choice(const GrapheneParams& p, Choice choice);

// Truncated H_K = 2ic [[0, A2^dag], [-A2, 0]] on span{e_0..e_N} + span{e_0..e_N}.
struct FockBlockMatrix {
  int N = 0;
  Eigen::MatrixXcd H;

  double hermiticity_defect() const;  // max |H - H^dag| entry
};

FockBlockMatrix build_HK_fock(const GrapheneParams& p, int N);

struct FockLevel {
  int n2 = 0;
  double energy_plus = 0;       // expected +2c sqrt(n2)
  double eig_error_plus = 0;    // distance to the nearest computed eigenvalue
  double overlap_plus = 0;      // norm of the ansatz projected on that eigenspace
  double energy_minus = 0;
  double eig_error_minus = 0;
  double overlap_minus = 0;
};

struct FockReport {
  int N = 0;
  double hermiticity_defect = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<FockLevel> levels;    // n2 = 1 .. N-2
  double zero_mode_eig_error = 0;
  double zero_mode_overlap = 0;     // norm of (e_0, 0) projected on the zero eigenspace
  double max_eig_error = 0;
  double max_overlap_defect = 0;    // max |1 - overlap| over levels and the zero mode
  bool passed(double tol = 1e-10) const;
};

// Diagonalizes the truncated H_K and checks the eigenpairs
//   (e_{n2}, -+ i e_{n2-1}) / sqrt2  with  E = +-2c sqrt(n2),   (e_0, 0) with E = 0
// for n2 <= N-2; the top two levels are truncation artifacts and are skipped.
FockReport fock_eigencheck(const GrapheneParams& p, int N, double degeneracy_tol = 1e-8);

// Label of the H_K eigenvector behind phi_p: "v⁺(n₂=p)", "v(n₂=0)" or "v⁻(n₂=-p)".
std::string map_phi_index(Index p);

}  // namespace vacfree::graphene
