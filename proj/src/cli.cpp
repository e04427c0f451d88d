#include "vacfree/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacfree/acceptance.hpp"
#include "vacfree/coherent.hpp"
#include "vacfree/errors.hpp"
#include "vacfree/graphene.hpp"

namespace vacfree::cli {

namespace {

using graphene::Choice;
using graphene::GrapheneParams;

struct RunConfig {
  std::string command;
  int choice = 3;
  double c = 1.0;
  std::string window;  // "lo:hi", empty = command default
  int trunc = -1;      // -1 = command default
  int fock_n = 24;
  double tol = 1e-14;
  std::string z = "0.5,0";
  double rmax = 0.9;
  int rsteps = 10;
  int asteps = -1;  // -1 = command default
  std::string measure;
  std::string format = "csv";
  std::string out;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string boolean(bool b) { return b ? "true" : "false"; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  int exit_code = kExitPass;
};

void write_csv(const Table& t, std::ostream& os) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string& cell = cells[i];
      if (i) os << ',';
      if (cell.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : cell) {
          if (ch == '"') os << '"';
          os << ch;
        }
        os << '"';
      } else {
        os << cell;
      }
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& r : t.rows) {
    line(r);
  }
}

void write_json(const std::string& command, const Table& t, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      obj[t.columns[i]] = r[i];
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = t.summary;
  os << doc.dump(2) << '\n';
}

IndexWindow parse_window(const std::string& s) {
  const auto colon = s.find(':', s.empty() ? 0 : 1);
  if (colon == std::string::npos) {
    throw ConfigError("--window expects lo:hi, got '" + s + "'");
  }
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo = s.substr(0, colon);
    const std::string hi = s.substr(colon + 1);
    const long long a = std::stoll(lo, &used_lo);
    const long long b = std::stoll(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) {
      throw ConfigError("--window expects integers, got '" + s + "'");
    }
    return IndexWindow(a, b);
  } catch (const std::logic_error&) {
    throw ConfigError("--window expects lo:hi, got '" + s + "'");
  }
}

cplx parse_z(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    std::size_t used_b = 0;
    const double re = std::stod(a, &used);
    const double im = std::stod(b, &used_b);
    if (used != a.size() || used_b != b.size()) throw ConfigError("");
    return {re, im};
  } catch (const std::exception&) {
    throw ConfigError("--z expects re,im, got '" + s + "'");
  }
}

GrapheneParams params_of(const RunConfig& cfg) {
  GrapheneParams p;
  p.c = cfg.c;
  p.validate();
  return p;
}

void require_positive_tol(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) {
    throw ConfigError("--tol must be positive");
  }
}

void require_inside_disk(const ThetaSequence& t, double r) {
  const ConvergenceRadius rho = radius_of_convergence(t);
  if (!rho.contains(r)) {
    throw ConfigError("|z| = " + num(r) + " is outside the disk of convergence rho = " +
                      num(rho.value()) + " for " + t.label());
  }
}

RadialMeasure resolve_measure(const RunConfig& cfg) {
  std::string name = cfg.measure;
  if (name.empty()) {
    if (cfg.choice == 3) {
      name = "choice3-gaussian";
    } else if (cfg.choice == 1) {
      name = "choice1-atom";
    } else {
      throw ConfigError("choice 2 has no built-in measure; pass --measure file:<path>");
    }
  }
  if (name == "choice3-gaussian") {
    return RadialMeasure::gaussian();
  }
  if (name == "choice1-atom") {
    return RadialMeasure::unit_circle_atom();
  }
  if (name.rfind("file:", 0) == 0) {
    return RadialMeasure::from_csv(name.substr(5));
  }
  throw ConfigError("unknown measure '" + name + "'");
}

std::optional<double> closed_form_normalization(Choice ch, double c, double r) {
  if (ch == Choice::one) {
    return std::sqrt(1.0 - r * r);
  }
  if (ch == Choice::three) {
    return std::exp(-0.5 * r * r);
  }
  (void)c;
  return std::nullopt;
}

// ---------------------------------------------------------------- commands

Table cmd_spectrum(const RunConfig& cfg) {
  const IndexWindow w = parse_window(cfg.window.empty() ? "-8:8" : cfg.window);
  const Spectrum s = graphene::graphene_spectrum(params_of(cfg));
  Table t;
  t.columns = {"p", "eps", "eigenvector"};
  for (Index p = w.lo; p <= w.hi; ++p) {
    t.rows.push_back({std::to_string(p), num(s(p)), graphene::map_phi_index(p)});
  }
  t.summary["strictly_increasing_nonzero"] = boolean(assert_strictly_increasing(s, w));
  return t;
}

Table cmd_factorize(const RunConfig& cfg) {
  const IndexWindow w = parse_window(cfg.window.empty() ? "-32:32" : cfg.window);
  const GrapheneParams p = params_of(cfg);
  const Index k_max = std::max<Index>(1, w.hi);
  Table t;
  t.columns = {"choice", "factorization_residual", "compatible", "r_constraint", "alpha_1",
               "beta_0"};
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    const LadderCoefficients c = graphene::coefficients_for_choice(p, ch);
    const double res = factorization_residual(c, w);
    const bool compat = check_compatibility(c, k_max);
    bool r_ok = true;
    try {
      build_R(c, IndexWindow(-1, 1));
    } catch (const ConstraintError&) {
      r_ok = false;
    }
    t.rows.push_back({std::to_string(static_cast<int>(ch)), num(res), boolean(compat),
                      boolean(r_ok), num(c.alpha(1)), num(c.beta(0))});
    if (res > 1e-12 || !compat) {
      t.exit_code = kExitFail;
    }
  }
  return t;
}

Table cmd_coherent(const RunConfig& cfg) {
  require_positive_tol(cfg);
  const Choice ch = graphene::parse_choice(cfg.choice);
  const GrapheneParams p = params_of(cfg);
  const ThetaSequence th = graphene::theta_for_choice(p, ch);
  const cplx z = parse_z(cfg.z);
  require_inside_disk(th, std::abs(z));
  const CoherentState s = build_coherent(th, z, cfg.tol);
  const double res = eigen_residual(s, th);
  const auto closed = closed_form_normalization(ch, p.c, std::abs(z));
  Table t;
  t.columns = {"choice",        "z_re",           "z_im",
               "K",             "tail_bound",     "eigen_residual",
               "normalization", "log_normalization", "closed_form_normalization"};
  t.rows.push_back({std::to_string(cfg.choice), num(z.real()), num(z.imag()),
                    std::to_string(s.K), num(s.tail_bound), num(res), num(s.normalization),
                    num(s.log_normalization), closed ? num(*closed) : ""});
  if (res > 1e-6) {
    t.exit_code = kExitFail;
  }
  return t;
}

Table cmd_scan_uncertainty(const RunConfig& cfg) {
  require_positive_tol(cfg);
  if (cfg.rsteps < 1) {
    throw ConfigError("--rsteps must be >= 1");
  }
  const int asteps = cfg.asteps < 0 ? 1 : cfg.asteps;
  if (asteps < 1) {
    throw ConfigError("--asteps must be >= 1");
  }
  if (!(cfg.rmax >= 0.0)) {
    throw ConfigError("--rmax must be nonnegative");
  }
  const Choice ch = graphene::parse_choice(cfg.choice);
  const ThetaSequence th = graphene::theta_for_choice(params_of(cfg), ch);
  require_inside_disk(th, cfg.rmax);
  Table t;
  t.columns = {"r", "arg", "direct", "closed_form", "commutator_bound", "expected", "saturated"};
  for (int i = 0; i < cfg.rsteps; ++i) {
    const double r = cfg.rsteps == 1 ? cfg.rmax : cfg.rmax * i / (cfg.rsteps - 1);
    for (int j = 0; j < asteps; ++j) {
      const double arg = 2.0 * std::numbers::pi * j / asteps;
      const UncertaintyProduct u = uncertainty_product(th, std::polar(r, arg), cfg.tol);
      std::string expected;
      if (ch == Choice::one) {
        expected = num(0.5 * (1.0 - r * r));
      } else if (ch == Choice::three) {
        expected = num(0.5);
      }
      const bool saturated = std::abs(u.direct - u.commutator_bound) <= 1e-8;
      t.rows.push_back({num(r), num(arg), num(u.direct), num(u.closed_form),
                        num(u.commutator_bound), expected, boolean(saturated)});
      if (std::abs(u.direct - u.closed_form) > 1e-8) {
        t.exit_code = kExitFail;
      }
    }
  }
  return t;
}

Table cmd_moments(const RunConfig& cfg) {
  const Choice ch = graphene::parse_choice(cfg.choice);
  const ThetaSequence th = graphene::theta_for_choice(params_of(cfg), ch);
  const RadialMeasure m = resolve_measure(cfg);
  const Index k_max = cfg.trunc < 0 ? 20 : cfg.trunc;
  const MomentReport rep = moment_residual(m, th, k_max, default_grid(m, k_max, 1));
  Table t;
  t.columns = {"k", "moment", "target", "log_target", "residual", "support_on_boundary"};
  for (const MomentRow& row : rep.rows) {
    t.rows.push_back({std::to_string(row.k), num(row.moment),
                      std::isfinite(row.target) ? num(row.target) : "", num(row.log_target),
                      num(row.residual), boolean(rep.support_on_boundary)});
  }
  t.summary["measure"] = m.label();
  t.summary["max_residual"] = num(rep.residual);
  t.summary["doubling_change"] = num(rep.doubling_change);
  t.summary["support_on_boundary"] = boolean(rep.support_on_boundary);
  if (rep.residual > 1e-8) {
    t.exit_code = kExitFail;
  }
  return t;
}

Table cmd_resolution(const RunConfig& cfg) {
  const Choice ch = graphene::parse_choice(cfg.choice);
  const ThetaSequence th = graphene::theta_for_choice(params_of(cfg), ch);
  const RadialMeasure m = resolve_measure(cfg);
  const Index bound = cfg.trunc < 0 ? 10 : cfg.trunc;
  const int angular = cfg.asteps < 0 ? static_cast<int>(2 * bound + 3) : cfg.asteps;
  if (angular < 2 * bound + 3) {
    throw ConfigError("--asteps must be >= 2*bound+3 = " + std::to_string(2 * bound + 3));
  }
  const std::vector<cplx> res = resolution_matrix(th, m, bound, default_grid(m, bound, angular));
  Table t;
  t.columns = {"p", "q", "re", "im", "abs"};
  double worst = 0.0;
  const std::size_t n = static_cast<std::size_t>(bound + 1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const cplx v = res[p * n + q];
      worst = std::max(worst, std::abs(v));
      t.rows.push_back({std::to_string(p), std::to_string(q), num(v.real()), num(v.imag()),
                        num(std::abs(v))});
    }
  }
  t.summary["measure"] = m.label();
  t.summary["max_abs_residual"] = num(worst);
  if (worst > 1e-6) {
    t.exit_code = kExitFail;
  }
  return t;
}

Table cmd_fock(const RunConfig& cfg) {
  const graphene::FockReport rep = graphene::fock_eigencheck(params_of(cfg), cfg.fock_n);
  Table t;
  t.columns = {"n2",           "energy_plus",  "eig_error_plus",  "overlap_plus",
               "energy_minus", "eig_error_minus", "overlap_minus"};
  t.rows.push_back({"0", num(0.0), num(rep.zero_mode_eig_error), num(rep.zero_mode_overlap),
                    num(0.0), num(rep.zero_mode_eig_error), num(rep.zero_mode_overlap)});
  for (const graphene::FockLevel& l : rep.levels) {
    t.rows.push_back({std::to_string(l.n2), num(l.energy_plus), num(l.eig_error_plus),
                      num(l.overlap_plus), num(l.energy_minus), num(l.eig_error_minus),
                      num(l.overlap_minus)});
  }
  t.summary["N"] = std::to_string(rep.N);
  t.summary["hermiticity_defect"] = num(rep.hermiticity_defect);
  t.summary["max_eig_error"] = num(rep.max_eig_error);
  t.summary["max_overlap_defect"] = num(rep.max_overlap_defect);
  t.summary["passed"] = boolean(rep.passed());
  if (!rep.passed()) {
    t.exit_code = kExitFail;
  }
  return t;
}

Table cmd_report(const RunConfig&) {
  const auto results = acceptance::run_all();
  Table t;
  t.columns = {"id", "criterion", "status", "detail"};
  for (const auto& r : results) {
    t.rows.push_back({std::to_string(r.id), r.name, r.passed ? "PASS" : "FAIL", r.detail});
  }
  t.summary["all_passed"] = boolean(acceptance::all_passed(results));
  t.exit_code = acceptance::all_passed(results) ? kExitPass : kExitFail;
  return t;
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--choice", cfg.choice, "coefficient choice")->check(CLI::Range(1, 3));
  sub->add_option("--c", cfg.c, "energy scale v_F/xi");
  sub->add_option("--window", cfg.window, "index window lo:hi");
  sub->add_option("--trunc", cfg.trunc, "truncation / moment order / resolution bound");
  sub->add_option("--fock-n", cfg.fock_n, "Fock truncation N");
  sub->add_option("--tol", cfg.tol, "series tail tolerance");
  sub->add_option("--z", cfg.z, "coherent-state label re,im");
  sub->add_option("--rmax", cfg.rmax, "largest |z| of the scan");
  sub->add_option("--rsteps", cfg.rsteps, "radial grid points");
  sub->add_option("--asteps", cfg.asteps, "angular grid points");
  sub->add_option("--measure", cfg.measure, "choice3-gaussian | choice1-atom | file:<path>");
  sub->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output path (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vacuum-free ladder operators and coherent states for graphene", "vacfree"};
  app.require_subcommand(1);
  RunConfig cfg;

  using Handler = Table (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"spectrum", "eigenvalue table over a window", cmd_spectrum},
      {"factorize", "factorization and compatibility per choice", cmd_factorize},
      {"coherent", "build one coherent state and check A Phi = z Phi", cmd_coherent},
      {"scan-uncertainty", "Delta X Delta P over a |z| grid", cmd_scan_uncertainty},
      {"moments", "moment condition for a radial measure", cmd_moments},
      {"resolution", "resolution-of-identity residual matrix", cmd_resolution},
      {"fock", "truncated Fock-space eigencheck of H_K", cmd_fock},
      {"report", "full acceptance suite", cmd_report},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_options(sub, cfg);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  std::size_t which = 0;
  for (; which < subs.size(); ++which) {
    if (subs[which]->parsed()) break;
  }
  cfg.command = std::get<0>(commands[which]);

  Table table;
  try {
    table = std::get<2>(commands[which])(cfg);
  } catch (const ConfigError& e) {
    err << "vacfree " << cfg.command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "vacfree " << cfg.command << ": " << e.what() << '\n';
    return kExitFail;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) {
      err << "vacfree: cannot open " << cfg.out << " for writing\n";
      return kExitUsage;
    }
    sink = &file;
  }
  if (cfg.format == "json") {
    write_json(cfg.command, table, *sink);
  } else {
    write_csv(table, *sink);
  }
  if (table.exit_code != kExitPass) {
    err << "vacfree " << cfg.command << ": verification failed\n";
  }
  return table.exit_code;
}

}  // namespace vacfree::cli
