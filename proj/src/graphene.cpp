#include "vacfree/graphene.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "vacfree/errors.hpp"

namespace vacfree::graphene {

namespace {

double root(Index n) { return std::sqrt(static_cast<double>(n)); }

}  // namespace

void GrapheneParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw ConfigError("energy scale c must be positive and finite");
  }
  if (n1 < 0) {
    throw ConfigError("n1 must be nonnegative");
  }
}

Choice parse_choice(int choice) {
  if (choice < 1 || choice > 3) {
    throw ConfigError("choice must be 1, 2 or 3");
  }
  return static_cast<Choice>(choice);
}

Spectrum graphene_spectrum(const GrapheneParams& p) {
  p.validate();
  const double c = p.c;
  return Spectrum(
      [c](Index k) {
        if (k > 0) {
          return c * (1.0 + 2.0 * root(k));
        }
        if (k == 0) {
          return c;
        }
        return c * (1.0 - 2.0 * root(-k));
      },
      "graphene", {{"c", c}, {"n1", static_cast<double>(p.n1)}});
}

Spectrum landau_ladder_spectrum(const GrapheneParams& p) {
  p.validate();
  const double c = p.c;
  return Spectrum(
      [c](Index k) {
        if (k > 0) {
          return 2.0 * c * root(k);
        }
        if (k == 0) {
          return 0.0;
        }
        return -2.0 * c * root(-k);
      },
      "graphene Landau ladder", {{"c", c}, {"n1", static_cast<double>(p.n1)}});
}

double landau_energy(const GrapheneParams& p, int n2, Branch sign) {
  p.validate();
  if (n2 < 0) {
    throw ConfigError("n2 must be nonnegative");
  }
  const double e = 2.0 * p.c * root(n2);
  return sign == Branch::plus ? e : -e;
}

LadderCoefficients coefficients_for_choice(const GrapheneParams& p, Choice choice) {
  p.validate();
  const double c = p.c;
  LadderCoefficients out{nullptr, nullptr, graphene_spectrum(p), ""};
  switch (choice) {
    case Choice::one:
      out.alpha = [c](Index k) { return k >= 1 ? 1.0 : c * (1.0 - 2.0 * root(-k)); };
      out.beta = [c](Index k) { return k >= 1 ? c * (1.0 + 2.0 * root(k)) : 1.0; };
      out.label = "choice 1";
      break;
    case Choice::two:
      out.alpha = [c](Index k) {
        return k >= 1 ? c * (1.0 + 2.0 * root(k)) : (1.0 - 2.0 * root(-k)) / (1.0 + 2.0 * root(1 - k));
      };
      out.beta = [c](Index k) { return k >= 1 ? 1.0 : c * (1.0 + 2.0 * root(1 - k)); };
      out.label = "choice 2";
      break;
    case Choice::three:
      out.alpha = [c](Index k) {
        return k >= 1 ? root(k) : c * (1.0 - 2.0 * root(-k)) / root(1 - k);
      };
      out.beta = [c](Index k) {
        return k >= 1 ? c * (1.0 + 2.0 * root(k)) / root(k) : root(1 - k);
      };
      out.label = "choice 3";
      break;
  }
  return out;
}

ThetaSequence theta_for_choice(const GrapheneParams& p, Choice choice) {
  return theta_from_coeffs(coefficients_for_choice(p, choice));
}

double FockBlockMatrix::hermiticity_defect() const {
  return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

FockBlockMatrix build_HK_fock(const GrapheneParams& p, int N) {
  p.validate();
  if (N < 1) {
    throw ConfigError("Fock truncation N must be >= 1");
  }
  const int dim = N + 1;
  FockBlockMatrix m{N, Eigen::MatrixXcd::Zero(2 * dim, 2 * dim)};
  const std::complex<double> pref(0.0, 2.0 * p.c);
  for (int n = 1; n <= N; ++n) {
    const double s = root(n);
    // upper-right block: 2ic A2^dag, (A2^dag)_{n, n-1} = sqrt n
    m.H(n, dim + n - 1) = pref * s;
    // lower-left block: -2ic A2, (A2)_{n-1, n} = sqrt n
    m.H(dim + n - 1, n) = -pref * s;
  }
  return m;
}

namespace {

struct Projection {
  double eig_error;
  double overlap;
};

Projection project(const Eigen::VectorXd& evals, const Eigen::MatrixXcd& evecs, double target,
                   const Eigen::VectorXcd& ansatz, double degeneracy_tol) {
  Eigen::Index nearest = 0;
  double best = std::abs(evals(0) - target);
  for (Eigen::Index i = 1; i < evals.size(); ++i) {
    const double d = std::abs(evals(i) - target);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  double sq = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (i == nearest || std::abs(evals(i) - evals(nearest)) <= degeneracy_tol) {
      sq += std::norm(evecs.col(i).dot(ansatz));
    }
  }
  return {best, std::sqrt(sq)};
}

}  // namespace

FockReport fock_eigencheck(const GrapheneParams& p, int N, double degeneracy_tol) {
  if (N < 4) {
    throw ConfigError("fock_eigencheck needs N >= 4");
  }
  const FockBlockMatrix m = build_HK_fock(p, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.H);
  if (solver.info() != Eigen::Success) {
    throw Error("Hermitian eigensolver failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Eigen::MatrixXcd& evecs = solver.eigenvectors();
  const int dim = N + 1;

  FockReport rep;
  rep.N = N;
  rep.hermiticity_defect = m.hermiticity_defect();
  rep.eigenvalues.assign(evals.data(), evals.data() + evals.size());

  Eigen::VectorXcd zero_mode = Eigen::VectorXcd::Zero(2 * dim);
  zero_mode(0) = 1.0;
  const Projection z = project(evals, evecs, 0.0, zero_mode, degeneracy_tol);
  rep.zero_mode_eig_error = z.eig_error;
  rep.zero_mode_overlap = z.overlap;
  rep.max_eig_error = z.eig_error;
  rep.max_overlap_defect = std::abs(1.0 - z.overlap);

  const std::complex<double> i(0.0, 1.0);
  for (int n2 = 1; n2 <= N - 2; ++n2) {
    FockLevel lvl;
    lvl.n2 = n2;
    // v+- = (e_{n2}, -+ i e_{n2-1}) / sqrt2
    Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(2 * dim);
    Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(2 * dim);
    plus(n2) = M_SQRT1_2;
    plus(dim + n2 - 1) = -i * M_SQRT1_2;
    minus(n2) = M_SQRT1_2;
    minus(dim + n2 - 1) = i * M_SQRT1_2;
    lvl.energy_plus = landau_energy(p, n2, Branch::plus);
    lvl.energy_minus = landau_energy(p, n2, Branch::minus);
    const Projection pp = project(evals, evecs, lvl.energy_plus, plus, degeneracy_tol);
    const Projection pm = project(evals, evecs, lvl.energy_minus, minus, degeneracy_tol);
    lvl.eig_error_plus = pp.eig_error;
    lvl.overlap_plus = pp.overlap;
    lvl.eig_error_minus = pm.eig_error;
    lvl.overlap_minus = pm.overlap;
    rep.max_eig_error = std::max({rep.max_eig_error, pp.eig_error, pm.eig_error});
    rep.max_overlap_defect = std::max(
        {rep.max_overlap_defect, std::abs(1.0 - pp.overlap), std::abs(1.0 - pm.overlap)});
    rep.levels.push_back(lvl);
  }
  return rep;
}

bool FockReport::passed(double tol) const {
  return hermiticity_defect == 0.0 && max_eig_error <= tol && max_overlap_defect <= tol;
}

std::string map_phi_index(Index p) {
  if (p > 0) {
    return "v⁺(n₂=" + std::to_string(p) + ")";
  }
  if (p == 0) {
    return "v(n₂=0)";
  }
  return "v⁻(n₂=" + std::to_string(-p) + ")";
}

}  // namespace vacfree::graphene
