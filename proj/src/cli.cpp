#include "finverify/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "finverify/fd_solver.hpp"
#include "finverify/format.hpp"
#include "finverify/reductions.hpp"
#include "finverify/residual.hpp"
#include "finverify/symmetry.hpp"

namespace finverify::cli {

using catalog::FamilySpec;

namespace {

// Default tolerances, one per check kind.
constexpr double kTolResidual = 1e-9;
constexpr double kTolStationaryResidual = 1e-8;
constexpr double kTolImplicit = 1e-12;
constexpr double kTolFirstIntegral = 1e-10;
constexpr double kTolAnsatz = 1e-12;
constexpr double kTolQ5 = 1e-9;
constexpr double kTolQ6 = 1e-8;
constexpr double kTolGcs = 1e-9;
constexpr double kTolFlow = 1e-8;
constexpr double kOrderLo = 1.7;
constexpr double kOrderHi = 2.3;
constexpr int kImplicitSamples = 50;

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

double tolerance(const RunConfig& cfg, double fallback) { return cfg.tol.value_or(fallback); }

CheckResult make_check(std::string name, const FamilySpec& spec, double defect, double tol) {
  // NaN defects fail.
  return {std::move(name), family_label(spec), defect, tol, defect <= tol};
}

/// Cubic coefficient of the base, the constant Q5 needs.
double cubic_coefficient(const FamilySpec& spec) {
  switch (spec.family_id) {
    case 1:
      return -spec.epsilon * spec.epsilon;
    case 2:
      return 0.0;
    case 3:
      return 1.0;
    default:
      return -1.0;
  }
}

/// First-integral constant Q6 needs: 0 for family 1, c1 of the profile for 6, 7.
double q6_constant(const FamilySpec& spec) {
  return spec.family_id == 1 ? 0.0 : static_cast<double>(spec.profile().c1);
}

/// Q6 branch read off the jet at the first admissible node.
int q6_branch_for(const FamilySpec& spec, const Box& box) {
  for (int i = 0; i < std::max(box.nt, 1); ++i) {
    for (int j = 0; j < std::max(box.nx, 1); ++j) {
      const Point p{box.t_at(i), box.x_at(j)};
      if (p.x == 0.0 || !catalog::validity(spec, p)) continue;
      return symmetry::q6_branch(residual::jet_of_family(spec, p), p);
    }
  }
  throw EmptyGrid("no admissible points in the box");
}

template <class Fn>
CheckResult guarded(const std::string& name, const FamilySpec& spec, double tol, Fn&& fn) {
  try {
    return make_check(name, spec, fn(), tol);
  } catch (const EmptyGrid&) {
    throw;
  } catch (const Error&) {
    return make_check(name, spec, nan(), tol);
  }
}

double ansatz_defect(const FamilySpec& spec, const Box& box) {
  const reductions::AnsatzCase c{spec.family_id, spec.epsilon};
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < std::max(box.nt, 1); ++i) {
    const double t = box.t_at(i);
    try {
      const auto [d1, d2] = reductions::ansatz_system_defect(c, t);
      const auto [a, b] = reductions::ansatz_coeffs(c, t);
      const double scale = std::max({1.0, 6.0 * std::abs(a), 2.0 / 3.0 * b * b});
      worst = std::max({worst, d1, d2 / scale});
      ++used;
    } catch (const SingularPoint&) {
    }
  }
  if (used == 0) throw EmptyGrid("no regular time in the box");
  return worst;
}

std::vector<double> sample_x(const Box& box, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(std::min(box.x0, box.x1), std::max(box.x0, box.x1));
  std::vector<double> xs(count);
  for (double& x : xs) x = dist(rng);
  return xs;
}

/// Relative residual of the profile equation, normalized by its largest term.
double stationary_relative(const symmetry::StationaryField& f, double omega) {
  const Taylor<2> j = f.jet(omega);
  const double phi = j.value();
  const double dphi = j.derivative(1);
  const double scale = std::max({1.5 * std::pow(phi, -2.5) * dphi * dphi,
                                 std::pow(phi, -1.5) * std::abs(j.derivative(2)),
                                 std::abs(phi / omega), 1e-30});
  return std::abs(symmetry::stationary_residual(f, omega)) / scale;
}

std::ostream* open_output(const RunConfig& cfg, std::ostream& fallback, std::ofstream& file) {
  if (cfg.out.empty()) return &fallback;
  file.open(cfg.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + cfg.out);
  return &file;
}

}  // namespace

// ---------------------------------------------------------------------------

void Table::write(std::ostream& os, Format format) const {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i]);
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
      os << '\n';
    }
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) obj[header[i]] = cell_json(row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

std::string family_label(const FamilySpec& spec) {
  const std::string tag = spec.params_tag();
  const std::string id = std::to_string(spec.family_id);
  return tag == "-" ? id : id + "[" + tag + "]";
}

std::vector<FamilySpec> select_families(const RunConfig& cfg) {
  std::vector<int> ids;
  if (cfg.family) {
    if (*cfg.family < 1 || *cfg.family > 7) {
      throw ConfigError("--family must be 1..7, got " + std::to_string(*cfg.family));
    }
    ids.push_back(*cfg.family);
  } else {
    ids = {1, 2, 3, 4, 5, 6, 7};
  }
  std::vector<FamilySpec> out;
  try {
    for (int id : ids) {
      switch (id) {
        case 1:
          if (cfg.epsilon) {
            out.push_back(FamilySpec::family1(*cfg.epsilon));
          } else {
            for (double e : {-1.0, 0.0, 1.0}) out.push_back(FamilySpec::family1(e));
          }
          break;
        case 6:
          out.push_back(FamilySpec::family6(cfg.c0.value_or(0.0), cfg.sign.value_or(1)));
          break;
        case 7:
          out.push_back(FamilySpec::family7(cfg.c0.value_or(0.0), cfg.sign.value_or(-1)));
          break;
        default:
          out.push_back(FamilySpec::cubic(id));
      }
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return out;
}

Box default_box(const FamilySpec& spec) {
  switch (spec.family_id) {
    case 1:
      return {0.0, 1.0, -1.4, -0.4, 20, 20};
    case 2:
      return {0.5, 2.0, -3.0, -1.0, 20, 20};
    case 3:
      return {0.0, 0.1, 2.0, 3.0, 20, 20};
    case 4:
    case 5:
      return {0.1, 1.0, -3.0, -1.0, 20, 20};
    case 6:
      return {0.0, 1.0, -10.0, -1.5, 2, 20};
    default:
      return {0.0, 1.0, -10.0, -0.5, 2, 20};
  }
}

Box config_box(const RunConfig& cfg, const FamilySpec& spec) {
  Box b = default_box(spec);
  if (cfg.t0) b.t0 = *cfg.t0;
  if (cfg.t1) b.t1 = *cfg.t1;
  if (cfg.x0) b.x0 = *cfg.x0;
  if (cfg.x1) b.x1 = *cfg.x1;
  if (cfg.nt) b.nt = *cfg.nt;
  if (cfg.nx) b.nx = *cfg.nx;
  if (b.nt < 1 || b.nx < 1) throw ConfigError("--nt and --nx must be at least 1");
  return b;
}

// ---------------------------------------------------------------------------

Table cmd_families() {
  Table t;
  t.header = {"family_id", "formula", "parameters", "validity"};
  for (const auto& info : catalog::family_listing()) {
    t.rows.push_back({static_cast<long long>(info.family_id), info.formula, info.parameters, info.validity});
  }
  return t;
}

std::vector<CheckResult> verify_family(const FamilySpec& spec, const RunConfig& cfg) {
  const Box box = config_box(cfg, spec);
  std::vector<CheckResult> out;
  if (spec.is_cubic()) {
    const double tol = tolerance(cfg, kTolResidual);
    out.push_back(guarded("residual_u", spec, tol, [&] { return residual::scan(spec, box, residual::Form::U).max_abs; }));
    out.push_back(guarded("residual_v", spec, tol, [&] { return residual::scan(spec, box, residual::Form::V).max_abs; }));
    out.push_back(guarded("ansatz_system", spec, tolerance(cfg, kTolAnsatz), [&] { return ansatz_defect(spec, box); }));
    symmetry::GcsReport gcs;
    bool gcs_ok = true;
    try {
      gcs = symmetry::check_gcs(spec, box);
    } catch (const EmptyGrid&) {
      throw;
    } catch (const Error&) {
      gcs_ok = false;
    }
    out.push_back(make_check("gcs_characteristic", spec, gcs_ok ? gcs.characteristic : nan(), tolerance(cfg, kTolGcs)));
    out.push_back(make_check("gcs_constraint", spec, gcs_ok ? gcs.constraint : nan(), tolerance(cfg, kTolGcs)));
    const double q5_c1 = cfg.c1.value_or(cubic_coefficient(spec));
    out.push_back(guarded("q5", spec, tolerance(cfg, kTolQ5), [&] {
      return symmetry::check_conditional(spec, {symmetry::Generator::Q5, q5_c1, 1}, box);
    }));
  } else {
    const auto profile = spec.profile();
    const auto xs = sample_x(box, cfg.seed, kImplicitSamples);
    double implicit = 0.0;
    double first = 0.0;
    int used = 0;
    bool broken = false;
    for (double x : xs) {
      if (!catalog::validity(spec, {0.0, x})) continue;
      try {
        const double psi = reductions::psi_from_x(profile, x);
        implicit = std::max(implicit, std::abs(reductions::antiderivative(profile.c1, psi) -
                                               (profile.sign / x + profile.c0)));
        first = std::max(first, reductions::first_integral_defect(profile, x));
        ++used;
      } catch (const Error&) {
        broken = true;
      }
    }
    if (used == 0 && !broken) throw EmptyGrid("no admissible sample in the box");
    out.push_back(make_check("implicit_root", spec, broken ? nan() : implicit, tolerance(cfg, kTolImplicit)));
    out.push_back(make_check("first_integral", spec, broken ? nan() : first, tolerance(cfg, kTolFirstIntegral)));
    out.push_back(guarded("residual_u", spec, tolerance(cfg, kTolStationaryResidual),
                          [&] { return residual::scan(spec, box, residual::Form::U).max_abs; }));
  }
  if (spec.is_stationary()) {
    const double c1 = cfg.c1.value_or(q6_constant(spec));
    out.push_back(guarded("q6", spec, tolerance(cfg, kTolQ6), [&] {
      return symmetry::check_conditional(spec, {symmetry::Generator::Q6, c1, q6_branch_for(spec, box)}, box);
    }));
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, Table& table) {
  table.header = {"check", "family", "max_defect", "tolerance", "pass"};
  bool all = true;
  for (const auto& spec : select_families(cfg)) {
    std::vector<CheckResult> checks;
    try {
      checks = verify_family(spec, cfg);
    } catch (const EmptyGrid& e) {
      throw ConfigError("family " + family_label(spec) + ": empty valid set (" + e.what() + ")");
    }
    for (const auto& c : checks) {
      all = all && c.pass;
      table.rows.push_back({c.check, c.family, c.max_defect, c.tolerance, c.pass});
    }
  }
  return all ? kExitPass : kExitFail;
}

int cmd_fd_compare(const RunConfig& cfg, Table& table) {
  RunConfig local = cfg;
  if (!local.family) local.family = 3;
  const auto specs = select_families(local);
  if (specs.size() != 1) throw ConfigError("fd-compare needs a single family (pin --epsilon for family 1)");
  const FamilySpec& spec = specs.front();
  const Box box = config_box(local, spec);

  numerics::GridRun base;
  base.x_lo = std::min(box.x0, box.x1);
  base.x_hi = std::max(box.x0, box.x1);
  base.t0 = box.t0;
  base.t1 = box.t1;
  base.family = spec;
  if (base.t1 < base.t0) throw ConfigError("fd-compare needs t1 >= t0");

  table.header = {"n", "max_error", "observed_order"};
  numerics::ConvergenceReport rep;
  try {
    rep = numerics::convergence_study(base, local.sizes);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  bool ok = true;
  for (std::size_t k = 0; k < rep.sizes.size(); ++k) {
    Cell order;
    if (k > 0) {
      const double p = rep.orders[k - 1];
      order = p;
      if (std::isfinite(p) && (p < kOrderLo || p > kOrderHi)) ok = false;
    }
    table.rows.push_back({static_cast<long long>(rep.sizes[k]), rep.errors[k], order});
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_orbit(const RunConfig& cfg, Table& table) {
  RunConfig local = cfg;
  if (!local.family) local.family = cfg.flow_eps ? 6 : 2;
  const auto specs = select_families(local);
  if (specs.size() != 1) throw ConfigError("orbit needs a single family (pin --epsilon for family 1)");
  const FamilySpec& spec = specs.front();
  const Box box = config_box(local, spec);
  table.header = {"stage", "transform", "family", "samples", "max_residual", "c0"};
  const std::string label = family_label(spec);

  if (cfg.flow_eps) {
    if (!spec.is_stationary()) throw ConfigError("the hidden flow acts on stationary families 1, 6, 7");
    const double eps = *cfg.flow_eps;
    const double tol = tolerance(cfg, kTolFlow);
    const auto before = symmetry::stationary_field(spec);
    const auto after = symmetry::flow_pi(eps, before);
    const int c1 = spec.family_id == 1 ? 0 : spec.profile().c1;
    const int sign = spec.family_id == 1 ? -1 : spec.branch_sign;
    const std::string transform = "pihat(eps=" + format_double(eps) + ")";

    auto stage = [&](const symmetry::StationaryField& f, bool image) {
      double worst = 0.0;
      double c0_sum = 0.0;
      long long n = 0;
      for (int j = 0; j < std::max(box.nx, 1); ++j) {
        const double x = box.x_at(j);
        if (x == 0.0 || !catalog::validity(spec, {0.0, x})) continue;
        double w = x;
        try {
          if (image) w = symmetry::flow_pi_omega(eps, x);
          worst = std::max(worst, stationary_relative(f, w));
          c0_sum += symmetry::refit_c0(f, c1, sign, w);
          ++n;
        } catch (const SingularPoint&) {
        }
      }
      if (n == 0) throw ConfigError("orbit: empty valid set");
      table.rows.push_back({std::string(image ? "after" : "before"), transform, label, n, worst,
                            c0_sum / static_cast<double>(n)});
      return worst;
    };
    stage(before, false);
    const double worst = stage(after, true);
    return worst <= tol ? kExitPass : kExitFail;
  }

  const symmetry::GroupElement g{cfg.delta0, cfg.delta1};
  const double tol = tolerance(cfg, kTolResidual);
  const auto base = residual::family_field(spec);
  const auto image = symmetry::act(g, base);
  const double scale = std::exp(g.delta1);
  const Box image_box{scale * box.t0 + g.delta0, scale * box.t1 + g.delta0, scale * box.x0,
                      scale * box.x1, box.nt, box.nx};
  const std::string transform = "group(d0=" + format_double(g.delta0) + ";d1=" + format_double(g.delta1) + ")";
  residual::ResidualReport r0, r1;
  try {
    r0 = residual::scan(base, box, residual::Form::U);
    r1 = residual::scan(image, image_box, residual::Form::U);
  } catch (const EmptyGrid& e) {
    throw ConfigError(std::string("orbit: empty valid set (") + e.what() + ")");
  }
  table.rows.push_back({std::string("before"), transform, label, static_cast<long long>(r0.samples), r0.max_abs, Cell{}});
  table.rows.push_back({std::string("after"), transform, label, static_cast<long long>(r1.samples), r1.max_abs, Cell{}});
  return r1.max_abs <= tol ? kExitPass : kExitFail;
}

int cmd_export(const RunConfig& cfg, Table& table) {
  table.header = {"family", "params", "t", "x", "u", "psi", "valid"};
  long long valid = 0;
  for (const auto& spec : select_families(cfg)) {
    Box box = config_box(cfg, spec);
    if (spec.is_stationary() && !cfg.nt) box.nt = 1;
    for (int i = 0; i < box.nt; ++i) {
      for (int j = 0; j < box.nx; ++j) {
        const Point p{box.t_at(i), box.x_at(j)};
        std::vector<Cell> row{static_cast<long long>(spec.family_id), spec.params_tag(), p.t, p.x};
        if (p.x != 0.0 && catalog::validity(spec, p)) {
          const double u = catalog::eval_u(spec, p);
          row.insert(row.end(), {u, -1.0 / (std::sqrt(u) * p.x), true});
          ++valid;
        } else {
          row.insert(row.end(), {Cell{}, Cell{}, false});
        }
        table.rows.push_back(std::move(row));
      }
    }
  }
  if (valid == 0) throw ConfigError("export: empty valid set");
  return kExitPass;
}

// ---------------------------------------------------------------------------

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Exact-solution and symmetry verification for u_t = (u^{-3/2} u_x)_x + u/x", "finverify"};
  app.set_config("--config", "", "Flat key=value file; flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--family", cfg.family, "Family id 1..7 (default: all)");
  app.add_option("--epsilon", cfg.epsilon, "Family 1 parameter (-1, 0 or 1)");
  app.add_option("--c0", cfg.c0, "Integration constant of families 6, 7");
  app.add_option("--c1", cfg.c1, "Constant of the reduction operators Q5/Q6");
  app.add_option("--sign", cfg.sign, "Branch sign of families 6, 7")->check(CLI::IsMember({-1, 1}));
  app.add_option("--t0", cfg.t0);
  app.add_option("--t1", cfg.t1);
  app.add_option("--x0", cfg.x0);
  app.add_option("--x1", cfg.x1);
  app.add_option("--nt", cfg.nt);
  app.add_option("--nx", cfg.nx);
  app.add_option("--tol", cfg.tol, "Override every check tolerance");
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  std::string format = "csv";
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--delta0", cfg.delta0, "Time translation of the group element (orbit)");
  app.add_option("--delta1", cfg.delta1, "Scaling exponent of the group element (orbit)");
  app.add_option("--flow-eps", cfg.flow_eps, "Parameter of the hidden stationary flow (orbit)");
  app.add_option("--sizes", cfg.sizes, "Grid sizes for fd-compare")->delimiter(',');

  app.add_subcommand("families", "List the solution families");
  app.add_subcommand("verify", "Run the invariant suite");
  app.add_subcommand("fd-compare", "Finite-difference convergence study");
  app.add_subcommand("orbit", "Transport a family by a symmetry and re-check it");
  app.add_subcommand("export", "Sample a family on a grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, out);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string(e.what()) + "\nRun with --help for usage.");
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (const char* seed = std::getenv("FINVERIFY_SEED"); seed != nullptr && *seed != '\0') {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(seed, &used);
      if (used != std::string(seed).size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      throw ConfigError(std::string("FINVERIFY_SEED is not an unsigned integer: ") + seed);
    }
  }
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) return kExitPass;
    Table table;
    int code = kExitPass;
    if (cfg->command == "families") {
      table = cmd_families();
    } else if (cfg->command == "verify") {
      code = cmd_verify(*cfg, table);
    } else if (cfg->command == "fd-compare") {
      code = cmd_fd_compare(*cfg, table);
    } else if (cfg->command == "orbit") {
      code = cmd_orbit(*cfg, table);
    } else {
      code = cmd_export(*cfg, table);
    }
    std::ofstream file;
    std::ostream* os = open_output(*cfg, out, file);
    table.write(*os, cfg->format);
    if (code != kExitPass) err << "finverify: " << cfg->command << ": check failed\n";
    return code;
  } catch (const ConfigError& e) {
    err << "finverify: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "finverify: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace finverify::cli
