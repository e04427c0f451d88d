#include "vacfree/coherent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "vacfree/errors.hpp"
#include "vacfree/kernels.hpp"
#include "vacfree/summation.hpp"

namespace vacfree {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGrowthForUnbounded = 1.05;
constexpr double kDoublingTol = 1e-10;
constexpr double kTailFraction = 1e-12;
constexpr double kMaxLogDouble = 709.0;

double log_sum_exp(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  CompensatedSum acc;
  for (double l : logs) {
    acc.add(std::exp(l - top));
  }
  return top + std::log(acc.value());
}

double norm_sq(std::span<const cplx> x) {
  CompensatedSum acc;
  for (const cplx& v : x) {
    acc.add(std::norm(v));
  }
  return acc.value();
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc.add(std::conj(x[i]) * y[i]);
  }
  return acc.value();
}

}  // namespace

// ---------------------------------------------------------------- radius

ConvergenceRadius ConvergenceRadius::finite(double rho, bool tail_monotone) {
  ConvergenceRadius r;
  r.rho_ = rho;
  r.tail_monotone_ = tail_monotone;
  return r;
}

ConvergenceRadius ConvergenceRadius::unbounded() {
  ConvergenceRadius r;
  r.unbounded_ = true;
  return r;
}

double ConvergenceRadius::value() const {
  if (unbounded_) {
    throw Error("radius of convergence is unbounded");
  }
  return rho_;
}

ConvergenceRadius radius_of_convergence(const ThetaSequence& t, Index k_probe) {
  if (k_probe < 8) {
    throw ConfigError("radius probe needs at least 8 terms");
  }
  const Index start = k_probe - k_probe / 4;
  std::vector<double> tail;
  for (Index k = start; k <= k_probe; ++k) {
    tail.push_back(std::abs(t(k)));
  }
  bool all_up = true;
  bool all_down = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    all_up = all_up && tail[i] > tail[i - 1];
    all_down = all_down && tail[i] <= tail[i - 1];
  }
  if (all_up && tail.back() >= kGrowthForUnbounded * tail.front()) {
    return ConvergenceRadius::unbounded();
  }
  CompensatedSum acc;
  for (double v : tail) {
    acc.add(v);
  }
  // Non-strict "up" (ties) still counts as monotone.
  bool non_decreasing = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    non_decreasing = non_decreasing && tail[i] >= tail[i - 1];
  }
  return ConvergenceRadius::finite(acc.value() / static_cast<double>(tail.size()),
                                   non_decreasing || all_down);
}

// ---------------------------------------------------------------- normalization

NormalizationSeries normalization_series(const ThetaSequence& t, double r, double tol,
                                         const ConvergenceRadius& rho, Index max_terms) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw ConfigError("|z| must be a finite nonnegative number");
  }
  if (!(tol > 0.0)) {
    throw ConfigError("series tolerance must be positive");
  }
  if (!rho.contains(r)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|z| = " << r << " is outside the disk of convergence (rho = " << rho.value()
        << ") for " << t.label();
    throw DivergenceError(msg.str());
  }
  NormalizationSeries s;
  s.log_terms.push_back(0.0);
  if (r == 0.0) {
    return s;
  }
  const double lr = std::log(r);
  double running = 0.0;  // running log of the partial sum, only for the stopping rule
  for (Index k = 0; k < max_terms; ++k) {
    const double next_theta = std::abs(t(k + 1));
    if (next_theta == 0.0) {
      throw ConstraintError("theta_" + std::to_string(k + 1) + " vanishes");
    }
    const double log_ratio = 2.0 * (lr - std::log(next_theta));
    if (log_ratio < 0.0) {
      const double q = std::exp(log_ratio);
      const double bound = std::exp(s.log_terms.back() - running) * q / (1.0 - q);
      if (bound < tol) {
        s.last_index = k;
        s.tail_rel = bound;
        s.log_sum = log_sum_exp(s.log_terms);
        return s;
      }
    }
    const double lt = s.log_terms.back() + log_ratio;
    s.log_terms.push_back(lt);
    running = std::max(running, lt) + std::log1p(std::exp(-std::abs(running - lt)));
  }
  throw DivergenceError("normalization series did not converge within the term cap for " +
                        t.label());
}

double normalization(const ThetaSequence& t, double r, double tol) {
  const NormalizationSeries s = normalization_series(t, r, tol, radius_of_convergence(t));
  return std::exp(-0.5 * s.log_sum);
}

CoherentState build_coherent(const ThetaSequence& t, cplx z, double tol) {
  const double r = std::abs(z);
  const NormalizationSeries s = normalization_series(t, r, tol, radius_of_convergence(t));
  CoherentState out;
  out.z = z;
  out.K = s.last_index;
  out.log_normalization = -0.5 * s.log_sum;
  out.normalization = std::exp(out.log_normalization);
  out.tail_bound = s.tail_rel;
  out.coeffs.resize(static_cast<std::size_t>(out.K + 1));
  const cplx unit = r == 0.0 ? cplx(1.0) : z / r;
  cplx phase = 1.0;
  for (Index k = 0; k <= out.K; ++k) {
    const double mag = std::exp(out.log_normalization + 0.5 * s.log_terms[k]);
    out.coeffs[static_cast<std::size_t>(k)] = mag * phase;
    phase *= unit;
  }
  return out;
}

double eigen_residual(const CoherentState& s, const ThetaSequence& t) {
  PhiCoords diff = apply_A(t, s.coeffs);
  kernels::sub_scaled(s.z, s.coeffs, diff);
  return std::sqrt(norm_sq(diff) / norm_sq(s.coeffs));
}

// ---------------------------------------------------------------- measures

RadialMeasure RadialMeasure::density(std::function<double(double)> f, double R,
                                     bool unbounded_tail, std::string label,
                                     std::vector<double> breakpoints) {
  if (!(R > 0.0)) {
    throw ConfigError("density support radius must be positive");
  }
  RadialMeasure m;
  m.kind_ = Kind::density;
  m.density_ = std::move(f);
  m.R_ = R;
  m.unbounded_tail_ = unbounded_tail;
  m.label_ = std::move(label);
  m.breakpoints_ = std::move(breakpoints);
  return m;
}

RadialMeasure RadialMeasure::atomic(std::vector<Atom> atoms, std::string label) {
  if (atoms.empty()) {
    throw ConfigError("atomic measure needs at least one atom");
  }
  RadialMeasure m;
  m.kind_ = Kind::atomic;
  for (const Atom& a : atoms) {
    if (!(a.r >= 0.0) || !(a.mass >= 0.0)) {
      throw ConfigError("atoms need nonnegative location and mass");
    }
    m.R_ = std::max(m.R_, a.r);
  }
  m.atoms_ = std::move(atoms);
  m.label_ = std::move(label);
  return m;
}

RadialMeasure RadialMeasure::piecewise_linear(std::vector<std::pair<double, double>> points,
                                              std::string label) {
  if (points.size() < 2) {
    throw ConfigError("piecewise-linear density needs at least two points");
  }
  std::vector<double> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].first < 0.0 || points[i].second < 0.0) {
      throw ConfigError("density points must have r >= 0 and density >= 0");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw ConfigError("density r values must be strictly increasing");
    }
    edges.push_back(points[i].first);
  }
  const double R = points.back().first;
  auto f = [pts = std::move(points)](double r) {
    if (r < pts.front().first || r > pts.back().first) {
      return 0.0;
    }
    auto it = std::upper_bound(pts.begin(), pts.end(), r,
                               [](double x, const auto& p) { return x < p.first; });
    if (it == pts.end()) {
      return pts.back().second;
    }
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double s = (r - lo.first) / (hi.first - lo.first);
    return lo.second + s * (hi.second - lo.second);
  };
  return density(std::move(f), R, false, std::move(label), std::move(edges));
}

RadialMeasure RadialMeasure::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open measure file " + path.string());
  }
  std::vector<std::pair<double, double>> pts;
  std::string line;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      continue;
    }
    double r = 0.0;
    double d = 0.0;
    const std::string a = line.substr(0, comma);
    const std::string b = line.substr(comma + 1);
    std::istringstream sa(a);
    std::istringstream sb(b);
    if (!(sa >> r) || !(sb >> d)) {
      continue;
    }
    pts.emplace_back(r, d);
  }
  return piecewise_linear(std::move(pts), "file:" + path.string());
}

RadialMeasure RadialMeasure::gaussian() {
  return density([](double r) { return r * std::exp(-r * r) / std::numbers::pi; }, 8.0, true,
                 "gaussian (1/pi) r exp(-r^2)");
}

RadialMeasure RadialMeasure::unit_circle_atom() {
  return atomic({Atom{1.0, 1.0 / kTwoPi}}, "atom r=1 mass 1/(2pi)");
}

double RadialMeasure::density_at(double r) const {
  if (kind_ != Kind::density) {
    throw Error("density_at on an atomic measure");
  }
  return density_(r);
}

namespace {

double radial_integral(const RadialMeasure& m, Index k, const QuadratureGrid& quad) {
  const auto& nodes = quad.radial_nodes();
  const auto& weights = quad.radial_weights();
  CompensatedSum acc;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i];
    acc.add(weights[i] * std::pow(r, 2.0 * static_cast<double>(k)) * m.density_at(r));
  }
  return acc.value();
}

}  // namespace

double effective_radius(const RadialMeasure& m, Index k_max) {
  if (m.kind() != RadialMeasure::Kind::density || !m.unbounded_tail()) {
    return m.support_max();
  }
  double R = 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * R)));
    const double inside = radial_integral(m, k_max, QuadratureGrid::uniform(R, panels, 24, 1));
    std::vector<double> edges;
    for (int i = 0; i <= panels; ++i) {
      edges.push_back(R + R * i / panels);
    }
    const double tail = radial_integral(m, k_max, QuadratureGrid(std::move(edges), 24, 1));
    if (tail <= kTailFraction * (inside + tail)) {
      return R;
    }
    R *= 1.25;
  }
  throw QuadratureError("could not find a truncation radius for " + m.label());
}

QuadratureGrid default_grid(const RadialMeasure& m, Index k_max, int angular) {
  if (m.kind() == RadialMeasure::Kind::atomic) {
    return QuadratureGrid::uniform(std::max(1.0, m.support_max()), 1, 1, angular);
  }
  if (!m.breakpoints().empty()) {
    return QuadratureGrid(m.breakpoints(), 24, angular);
  }
  const double R = effective_radius(m, k_max);
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * R)));
  return QuadratureGrid::uniform(R, panels, 24, angular);
}

double measure_moment(const RadialMeasure& m, Index k, const QuadratureGrid& quad) {
  if (m.kind() == RadialMeasure::Kind::atomic) {
    CompensatedSum acc;
    for (const Atom& a : m.atoms()) {
      acc.add(a.mass * std::pow(a.r, 2.0 * static_cast<double>(k)));
    }
    return kTwoPi * acc.value();
  }
  return kTwoPi * radial_integral(m, k, quad);
}

MomentReport moment_residual(const RadialMeasure& m, const ThetaSequence& t, Index k_max,
                             const QuadratureGrid& quad) {
  if (k_max < 0) {
    throw ConfigError("k_max must be nonnegative");
  }
  MomentReport rep;
  const std::vector<double> logfact = t.log_factorials(k_max);
  const bool quadrature = m.kind() == RadialMeasure::Kind::density;
  const QuadratureGrid fine = quadrature ? quad.refined() : quad;
  for (Index k = 0; k <= k_max; ++k) {
    MomentRow row;
    row.k = k;
    row.moment = measure_moment(m, k, quad);
    if (quadrature) {
      const double check = measure_moment(m, k, fine);
      const double change =
          std::abs(check - row.moment) / std::max(std::abs(check), std::numeric_limits<double>::min());
      rep.doubling_change = std::max(rep.doubling_change, change);
    }
    row.log_target = 2.0 * logfact[static_cast<std::size_t>(k)];
    if (row.log_target < kMaxLogDouble) {
      row.target = std::exp(row.log_target);
      row.residual = std::abs(row.moment - row.target) / std::max(1.0, row.target);
    } else {
      row.target = std::numeric_limits<double>::infinity();
      row.residual = row.moment > 0.0
                         ? std::abs(std::expm1(std::log(row.moment) - row.log_target))
                         : 1.0;
    }
    rep.residual = std::max(rep.residual, row.residual);
    rep.rows.push_back(row);
  }
  if (rep.doubling_change > kDoublingTol) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "node doubling changed a moment by " << rep.doubling_change << " (relative) for "
        << m.label();
    throw QuadratureError(msg.str());
  }
  const ConvergenceRadius rho = radius_of_convergence(t);
  if (!rho.is_unbounded()) {
    if (m.kind() == RadialMeasure::Kind::atomic) {
      for (const Atom& a : m.atoms()) {
        rep.support_on_boundary = rep.support_on_boundary || (a.mass > 0.0 && a.r >= rho.value());
      }
    } else {
      rep.support_on_boundary = m.support_max() > rho.value();
    }
  }
  return rep;
}

namespace {

// Per radial point: weight of d lambda, N(r)^{-2}, and log|<Phi_k, Phi(z)>| for k <= n_max.
struct RadialNode {
  double r;
  double weight;
  double inv_norm_sq;
  std::vector<double> log_amp;  // -inf where the amplitude vanishes
};

std::vector<RadialNode> radial_nodes(const ThetaSequence& t, const RadialMeasure& m,
                                     Index n_max, const QuadratureGrid& quad,
                                     const ConvergenceRadius& rho) {
  std::vector<std::pair<double, double>> radial;
  if (m.kind() == RadialMeasure::Kind::atomic) {
    for (const Atom& a : m.atoms()) {
      radial.emplace_back(a.r, a.mass);
    }
  } else {
    const auto& nodes = quad.radial_nodes();
    const auto& weights = quad.radial_weights();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      radial.emplace_back(nodes[i], weights[i] * m.density_at(nodes[i]));
    }
  }
  const std::vector<double> logfact = t.log_factorials(n_max);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<RadialNode> out;
  for (const auto& [r, w] : radial) {
    if (w == 0.0) {
      continue;
    }
    RadialNode node{r, w, 1.0, std::vector<double>(static_cast<std::size_t>(n_max + 1), neg_inf)};
    if (r == 0.0) {
      node.log_amp[0] = 0.0;
    } else {
      const NormalizationSeries s = normalization_series(t, r, 1e-16, rho);
      const double log_n = -0.5 * s.log_sum;
      node.inv_norm_sq = std::exp(s.log_sum);
      for (Index k = 0; k <= n_max; ++k) {
        node.log_amp[static_cast<std::size_t>(k)] =
            log_n + static_cast<double>(k) * std::log(r) - logfact[static_cast<std::size_t>(k)];
      }
    }
    out.push_back(std::move(node));
  }
  return out;
}

cplx resolution_entry(const std::vector<RadialNode>& nodes, Index p, Index q,
                      const QuadratureGrid& quad) {
  const int M = quad.angular();
  const double dtheta = quad.angular_weight();
  CompensatedComplexSum acc;
  for (const RadialNode& node : nodes) {
    const double amp_p = std::exp(node.log_amp[static_cast<std::size_t>(p)]);
    const double amp_q = std::exp(node.log_amp[static_cast<std::size_t>(q)]);
    const double radial_factor = node.weight * node.inv_norm_sq * amp_p * amp_q;
    for (int j = 0; j < M; ++j) {
      // <Phi_p, Phi(z)> <Phi(z), Phi_q> carries e^{i (p - q) theta}.
      const double phase = static_cast<double>(p - q) * quad.angle(j);
      acc.add(radial_factor * dtheta * cplx(std::cos(phase), std::sin(phase)));
    }
  }
  return acc.value() - (p == q ? 1.0 : 0.0);
}

void check_angular(const QuadratureGrid& quad, Index n_max) {
  if (quad.angular() < 2 * n_max + 3) {
    throw QuadratureError("angular order " + std::to_string(quad.angular()) +
                          " cannot resolve e^{i(p-q)theta} exactly; need >= " +
                          std::to_string(2 * n_max + 3));
  }
}

}  // namespace

cplx resolution_residual(const ThetaSequence& t, const RadialMeasure& m, Index p, Index q,
                         const QuadratureGrid& quad) {
  if (p < 0 || q < 0) {
    throw ConfigError("resolution indices must be nonnegative");
  }
  const Index n_max = std::max(p, q);
  check_angular(quad, n_max);
  const ConvergenceRadius rho = radius_of_convergence(t);
  const cplx coarse = resolution_entry(radial_nodes(t, m, n_max, quad, rho), p, q, quad);
  if (m.kind() == RadialMeasure::Kind::density) {
    const QuadratureGrid fine_grid = quad.refined();
    const cplx fine =
        resolution_entry(radial_nodes(t, m, n_max, fine_grid, rho), p, q, fine_grid);
    if (std::abs(fine - coarse) > kDoublingTol * std::max(1.0, std::abs(fine))) {
      throw QuadratureError("node doubling changed a resolution entry for " + m.label());
    }
  }
  return coarse;
}

std::vector<cplx> resolution_matrix(const ThetaSequence& t, const RadialMeasure& m, Index n_max,
                                    const QuadratureGrid& quad) {
  if (n_max < 0) {
    throw ConfigError("resolution bound must be nonnegative");
  }
  check_angular(quad, n_max);
  const ConvergenceRadius rho = radius_of_convergence(t);
  const auto nodes = radial_nodes(t, m, n_max, quad, rho);
  std::vector<RadialNode> fine_nodes;
  const QuadratureGrid fine_grid = quad.refined();
  const bool doubling = m.kind() == RadialMeasure::Kind::density;
  if (doubling) {
    fine_nodes = radial_nodes(t, m, n_max, fine_grid, rho);
  }
  const std::size_t n = static_cast<std::size_t>(n_max + 1);
  std::vector<cplx> out(n * n);
  for (Index p = 0; p <= n_max; ++p) {
    for (Index q = 0; q <= n_max; ++q) {
      const cplx coarse = resolution_entry(nodes, p, q, quad);
      if (doubling) {
        const cplx fine = resolution_entry(fine_nodes, p, q, fine_grid);
        if (std::abs(fine - coarse) > kDoublingTol * std::max(1.0, std::abs(fine))) {
          throw QuadratureError("node doubling changed a resolution entry for " + m.label());
        }
      }
      out[static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)] = coarse;
    }
  }
  return out;
}

std::optional<Atom> single_atom_from_moments(double mu0, double mu1, double mu2,
                                             double rel_tol) {
  if (!(mu0 > 0.0) || mu1 < 0.0 || mu2 < 0.0) {
    return std::nullopt;
  }
  const double det = mu0 * mu2 - mu1 * mu1;
  if (std::abs(det) > rel_tol * mu0 * mu2) {
    return std::nullopt;
  }
  return Atom{std::sqrt(mu1 / mu0), mu0};
}

// ---------------------------------------------------------------- uncertainty

UncertaintyProduct uncertainty_product(const ThetaSequence& t, cplx z, double tol) {
  const CoherentState s = build_coherent(t, z, tol);
  // Two spare coordinates so A^dag and X^2-type images never leave the truncation.
  PhiCoords x = s.coeffs;
  x.resize(x.size() + 2);
  const PhiCoords a = apply_A(t, x);
  const PhiCoords ad = apply_A_adjoint(t, x, Strictness::strict);
  PhiCoords xs(x.size());
  PhiCoords ps(x.size());
  kernels::combine(a, ad, +1.0, cplx(M_SQRT1_2, 0.0), xs);
  kernels::combine(a, ad, -1.0, cplx(0.0, -M_SQRT1_2), ps);

  const double n2 = norm_sq(x);
  const double mean_x = inner(x, xs).real() / n2;
  const double mean_p = inner(x, ps).real() / n2;
  const double var_x = std::max(0.0, norm_sq(xs) / n2 - mean_x * mean_x);
  const double var_p = std::max(0.0, norm_sq(ps) / n2 - mean_p * mean_p);

  UncertaintyProduct u;
  u.delta_x = std::sqrt(var_x);
  u.delta_p = std::sqrt(var_p);
  u.direct = u.delta_x * u.delta_p;
  const double adag_sq = norm_sq(ad) / n2;
  const double a_sq = norm_sq(a) / n2;
  u.closed_form = 0.5 * (adag_sq - std::norm(z));
  // [X, P] = i [A, A^dag]
  u.commutator_bound = 0.5 * std::abs(adag_sq - a_sq);
  return u;
}

bool saturation_check(const ThetaSequence& t, cplx z, double tol) {
  const UncertaintyProduct u = uncertainty_product(t, z, tol);
  return std::abs(u.direct - u.commutator_bound) <= 1e-8;
}

}  // namespace vacfree
