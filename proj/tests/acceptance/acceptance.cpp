// Acceptance run: one PASS/FAIL line per criterion, INFO lines for the
// printed variants that are expected to fail. Exit status 1 if any criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "finverify/catalog.hpp"
#include "finverify/cli.hpp"
#include "finverify/fd_solver.hpp"
#include "finverify/numerics.hpp"
#include "finverify/reductions.hpp"
#include "finverify/residual.hpp"
#include "finverify/symmetry.hpp"
#include "finverify/taylor.hpp"

namespace fv = finverify;
using fv::Box;
using fv::Jet;
using fv::Point;
using fv::catalog::FamilySpec;
using fv::residual::Form;

namespace {

int g_failures = 0;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void criterion(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("CRITERION %d %s  %s: %s\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void info(const std::string& text) {
  std::printf("INFO  %s\n", text.c_str());
  std::fflush(stdout);
}

double relative(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::mt19937_64 rng_for(int id) { return std::mt19937_64(20240607ULL + static_cast<unsigned>(id)); }

std::vector<FamilySpec> cubic_variants() {
  return {FamilySpec::family1(-1.0), FamilySpec::family1(0.0), FamilySpec::family1(1.0),
          FamilySpec::cubic(2),      FamilySpec::cubic(3),      FamilySpec::cubic(4),
          FamilySpec::cubic(5)};
}

double cubic_coefficient(const FamilySpec& s) {
  switch (s.family_id) {
    case 1:
      return -s.epsilon * s.epsilon;
    case 2:
      return 0.0;
    case 3:
      return 1.0;
    default:
      return -1.0;
  }
}

// ---------------------------------------------------------------------------

void criterion1() {
  double worst_u = 0.0, worst_v = 0.0;
  for (const auto& spec : cubic_variants()) {
    const Box box = fv::cli::default_box(spec);
    worst_u = std::max(worst_u, fv::residual::scan(spec, box, Form::U).max_abs);
    worst_v = std::max(worst_v, fv::residual::scan(spec, box, Form::V).max_abs);
  }
  criterion(1, "exact-solution certification", worst_u < 1e-9 && worst_v < 1e-9,
            "families 1(eps=-1,0,1),2-5 on 20x20 grids, max u-form " + sci(worst_u) + ", max v-form " +
                sci(worst_v) + " (limit 1e-9)");
}

void criterion2() {
  double implicit = 0.0, first = 0.0, pde = 0.0;
  int samples = 0;
  for (const auto& spec : {FamilySpec::family6(0.0, 1), FamilySpec::family7(0.0, -1)}) {
    const auto prof = spec.profile();
    const Box box = fv::cli::default_box(spec);
    auto rng = rng_for(2 + spec.family_id);
    std::uniform_real_distribution<double> xs(box.x0, box.x1);
    for (int k = 0; k < 50; ++k) {
      const double x = xs(rng);
      const double psi = fv::reductions::psi_from_x(prof, x);
      implicit = std::max(implicit, std::abs(fv::reductions::antiderivative(prof.c1, psi) -
                                             (prof.sign / x + prof.c0)));
      first = std::max(first, fv::reductions::first_integral_defect(prof, x));
      const Point p{0.0, x};
      pde = std::max(pde, std::abs(fv::residual::relative_residual(fv::residual::jet_of_family(spec, p), p,
                                                                   Form::U)));
      ++samples;
    }
  }
  criterion(2, "implicit families", implicit < 1e-12 && first < 1e-10 && pde < 1e-8,
            std::to_string(samples) + " samples of families 6 (c1=-1) and 7 (c1=1, psi>0): |F-rhs| " +
                sci(implicit) + ", first integral " + sci(first) + ", PDE residual " + sci(pde));
}

/// The c1 = 1 antiderivative with a single radical inside the logarithm.
fv::Taylor<1> printed_c1_plus(double psi) {
  using T = fv::Taylor<1>;
  const T p = T::variable(psi);
  const T r = sqrt(p + p * p);
  return r - T(0.5) * log(T(2.0) * p + T(1.0) + r);
}

void criterion3() {
  auto rng = rng_for(3);
  double quad_err = 0.0;
  double slope_err = 0.0;
  for (int c1 : {-1, 0, 1}) {
    const double hi = c1 == -1 ? 1.0 : 6.0;
    std::uniform_real_distribution<double> dist(0.0, hi);
    for (int k = 0; k < 100; ++k) {
      double a = dist(rng), b = dist(rng);
      if (a > b) std::swap(a, b);
      const double q = fv::reductions::antiderivative_quadrature(c1, a, b);
      const double closed = fv::reductions::antiderivative(c1, b) - fv::reductions::antiderivative(c1, a);
      quad_err = std::max(quad_err, std::abs(q - closed));
      const double mid = 0.5 * (a + b);
      if (mid > 0.0 && mid < hi) {
        const double slope = fv::reductions::antiderivative_jet(c1, mid).derivative(1);
        slope_err = std::max(slope_err, relative(slope, fv::reductions::integrand(c1, mid)));
      }
    }
  }
  // Negative branch of c1 = 1.
  std::uniform_real_distribution<double> neg(-8.0, -1.0);
  for (int k = 0; k < 100; ++k) {
    double a = neg(rng), b = neg(rng);
    if (a > b) std::swap(a, b);
    const double q = fv::reductions::antiderivative_quadrature(1, a, b);
    const double closed = fv::reductions::antiderivative(1, b) - fv::reductions::antiderivative(1, a);
    quad_err = std::max(quad_err, std::abs(q - closed));
    const double mid = 0.5 * (a + b);
    slope_err = std::max(slope_err, relative(fv::reductions::antiderivative_jet(1, mid).derivative(1),
                                                         fv::reductions::integrand(1, mid)));
  }

  double printed_err = 0.0;
  for (double psi : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    printed_err = std::max(printed_err, relative(printed_c1_plus(psi).derivative(1),
                                                             fv::reductions::integrand(1, psi)));
  }
  const bool printed_fails = !(printed_err < 1e-10);
  info("c1=1 printed logarithm (radical coefficient 1): F' vs integrand relative error " + sci(printed_err) +
       (printed_fails ? " -> derivative check FAILS as expected" : " -> derivative check unexpectedly passes"));
  info("c1=1 corrected logarithm (radical coefficient 2): F' at 0.5 = " +
       sci(fv::reductions::antiderivative_jet(1, 0.5).derivative(1)) + ", integrand " +
       sci(fv::reductions::integrand(1, 0.5)));
  criterion(3, "quadrature oracle", quad_err < 1e-10 && slope_err < 1e-10 && printed_fails,
            "100 subintervals per c1 in {-1,0,1} (+100 on psi<-1): max |quad - dF| " + sci(quad_err) +
                ", max relative |F' - integrand| " + sci(slope_err) + "; printed c1=1 form rejected: " +
                (printed_fails ? "yes" : "no"));
}

double similarity_relative(const std::function<fv::Taylor<2>(double)>& phi, double w) {
  const auto j = phi(w);
  const double f = j.value(), d = j.derivative(1), dd = j.derivative(2);
  const double scale = std::max({std::abs(f * dd), 2.0 / 3.0 * d * d, std::abs(w * d), std::abs(1.5 * f / w),
                                 std::abs(f), 1e-300});
  return std::abs(fv::reductions::similarity_ode_residual(f, d, dd, w)) / scale;
}

void criterion4() {
  using T = fv::Taylor<2>;
  auto linear = [](double w) { return T(-2.25) * T::variable(w); };
  auto quadratic = [](double w) {
    const T x = T::variable(w);
    return T(1.5) * x * x - T(2.25) * x;
  };
  auto rng = rng_for(4);
  std::uniform_real_distribution<double> ws(0.2, 4.0);
  double sim = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double w = (k % 2 ? 1.0 : -1.0) * ws(rng);
    sim = std::max({sim, similarity_relative(linear, w), similarity_relative(quadratic, w)});
  }
  double system = 0.0;
  std::uniform_real_distribution<double> ts(0.05, 0.7);
  for (int k = 0; k < 50; ++k) {
    const double t = ts(rng);
    for (int id = 2; id <= 5; ++id) {
      const fv::reductions::AnsatzCase c{id, 0.0};
      const auto [d1, d2] = fv::reductions::ansatz_system_defect(c, t);
      const auto [a, b] = fv::reductions::ansatz_coeffs(c, t);
      system = std::max({system, d1, d2 / std::max({1.0, 6.0 * std::abs(a), 2.0 / 3.0 * b * b})});
    }
  }
  double case1 = 0.0;
  for (double eps : {-1.0, 0.0, 1.0}) case1 = std::max(case1, fv::reductions::ansatz_system_defect({1, eps}, 0.3).second);
  const double family1_pde = std::max({fv::residual::scan(FamilySpec::family1(-1.0), fv::cli::default_box(FamilySpec::family1(-1.0)), Form::U).max_abs,
                                       fv::residual::scan(FamilySpec::family1(1.0), fv::cli::default_box(FamilySpec::family1(1.0)), Form::U).max_abs});
  // Printed pairs, substituted into the system: (eps^2, eps) at eps = 1 and (0, -(3/2) t).
  info("case 1 printed pair (eps^2, eps), eps=1: system defect " + sci(std::abs(0.0 + 6.0 + 2.0 / 3.0)) +
       "; sign-consistent pair (-eps^2, 3 eps): defect " + sci(case1));
  info("case 2 printed pair (0, -(3/2) t) at t=2: system defect " + sci(std::abs(-1.5 + 2.0 / 3.0 * 9.0)) +
       "; pair (0, 3/(2t)) reproduces family 2");
  criterion(4, "reduced-ODE checks", sim < 1e-12 && system < 1e-12 && family1_pde < 1e-9,
            "similarity ODE max relative defect " + sci(sim) + " at 50 w; cases 2-5 system defect " + sci(system) +
                "; case 1 via PDE residual " + sci(family1_pde) + " (system defect " + sci(case1) + ")");
}

void criterion5() {
  auto run = [](double phi1, double t1, double h) {
    return fv::reductions::integrate_ansatz(phi1, 0.0, 0.0, t1, h).phi2.back();
  };
  const double tan_exact = -3.0 * std::tan(1.0);    // case 3 at t = 0.5
  const double tanh_exact = 3.0 * std::tanh(2.0);   // case 4 at t = 1
  const double e3 = std::abs(run(1.0, 0.5, 1e-3) - tan_exact);
  const double e4 = std::abs(run(-1.0, 1.0, 1e-3) - tanh_exact);
  // The tan case changes error sign near h = 0.03; halve well inside the
  // asymptotic range but above roundoff.
  const double o3 = std::log2(std::abs(run(1.0, 0.5, 2.5e-3) - tan_exact) / std::abs(run(1.0, 0.5, 1.25e-3) - tan_exact));
  const double o4 = std::log2(std::abs(run(-1.0, 1.0, 2.5e-3) - tanh_exact) / std::abs(run(-1.0, 1.0, 1.25e-3) - tanh_exact));
  const bool pass = e3 < 1e-6 && e4 < 1e-6 && std::abs(o3 - 4.0) <= 0.3 && std::abs(o4 - 4.0) <= 0.3;
  criterion(5, "RK cross-check", pass,
            "end errors case 3 " + sci(e3) + ", case 4 " + sci(e4) + "; observed orders " + sci(o3) + ", " + sci(o4));
}

void criterion6() {
  const std::vector<int> sizes{51, 101, 201};
  std::string detail;
  bool pass = true;
  struct Setup {
    const char* name;
    FamilySpec spec;
    double x0, x1, t0, t1;
  };
  const Setup setups[] = {{"family 3", FamilySpec::cubic(3), 2.0, 3.0, 0.0, 0.1},
                          {"family 2", FamilySpec::cubic(2), -3.0, -1.0, 0.5, 1.0}};
  for (const auto& s : setups) {
    fv::numerics::GridRun base;
    base.x_lo = s.x0;
    base.x_hi = s.x1;
    base.t0 = s.t0;
    base.t1 = s.t1;
    base.family = s.spec;
    const auto rep = fv::numerics::convergence_study(base, sizes);
    double min_u = std::numeric_limits<double>::infinity();
    for (int n : sizes) {
      base.n = n;
      min_u = std::min(min_u, fv::numerics::fd_solve(base).min_u);
    }
    for (double p : rep.orders) pass = pass && std::abs(p - 2.0) <= 0.3;
    pass = pass && min_u > 0.0;
    detail += std::string(detail.empty() ? "" : "; ") + s.name + " orders " + sci(rep.orders[0]) + ", " +
              sci(rep.orders[1]) + ", min u " + sci(min_u);
  }
  criterion(6, "finite-difference cross-validation", pass, detail + " (grids 51,101,201)");
}

void criterion7() {
  auto rng = rng_for(7);
  std::uniform_real_distribution<double> delta(-1.0, 1.0);
  double group = 0.0;
  for (const auto& spec : cubic_variants()) {
    const auto base = fv::residual::family_field(spec);
    const Box box = fv::cli::default_box(spec);
    for (int k = 0; k < 20; ++k) {
      const fv::symmetry::GroupElement g{delta(rng), delta(rng)};
      const auto image = fv::symmetry::act(g, base);
      for (int i = 0; i < box.nt; i += 4) {
        for (int j = 0; j < box.nx; j += 2) {
          const Point p = g.apply({box.t_at(i), box.x_at(j)});
          if (!image.admissible(p)) continue;
          group = std::max(group, std::abs(fv::residual::relative_residual(image.jet(p), p, Form::U)));
        }
      }
    }
  }

  using fv::symmetry::Generator;
  const auto b1 = fv::symmetry::bracket({Generator::Dt}, {Generator::D});
  const auto b2 = fv::symmetry::bracket({Generator::DHat}, {Generator::PiHat});
  const bool brackets = b1 && b1->generator == Generator::Dt && b1->coefficient == fv::symmetry::Rational(1) && b2 &&
                        b2->generator == Generator::PiHat && b2->coefficient == fv::symmetry::Rational(3);

  double flow = 0.0;
  for (const auto& spec : {FamilySpec::family1(0.0), FamilySpec::family1(1.0), FamilySpec::family6(0.0, 1)}) {
    const auto image = fv::symmetry::flow_pi(0.1, fv::symmetry::stationary_field(spec));
    const Box box = fv::cli::default_box(spec);
    for (int j = 0; j < box.nx; ++j) {
      const double w = fv::symmetry::flow_pi_omega(0.1, box.x_at(j));
      const auto jet = image.jet(w);
      const double f = jet.value(), d = jet.derivative(1), dd = jet.derivative(2);
      const double scale = std::max({1.5 * std::pow(f, -2.5) * d * d, std::pow(f, -1.5) * std::abs(dd), std::abs(f / w)});
      flow = std::max(flow, std::abs(fv::symmetry::stationary_residual(image, w)) / scale);
    }
  }

  double tilde = 0.0;
  double literal_negative = 0.0;
  for (const auto& spec : {FamilySpec::family1(-1.0), FamilySpec::family1(0.0), FamilySpec::family1(1.0),
                           FamilySpec::cubic(2)}) {
    const auto image = fv::symmetry::to_tilde(fv::residual::family_field(spec));
    const Box box = fv::cli::default_box(spec);
    for (int i = 0; i < box.nt; i += 4) {
      for (int j = 0; j < box.nx; ++j) {
        const Point p{box.t_at(i), 1.0 / box.x_at(j)};
        if (!image.admissible(p)) continue;
        const Jet jt = image.jet(p);
        tilde = std::max(tilde, std::abs(fv::residual::relative_residual(jt, p, Form::Tilde)));
        // Literal transformed equation without the sign of x': x'^{-1} u_t = (u^{-3/2} u_x)_x + u.
        const double diff = std::pow(jt.u, -1.5) * jt.u_xx - 1.5 * std::pow(jt.u, -2.5) * jt.u_x * jt.u_x;
        const double lit = jt.u_t / p.x - diff - jt.u;
        const double scale = std::max({std::abs(jt.u_t / p.x), std::abs(diff), std::abs(jt.u)});
        literal_negative = std::max(literal_negative, std::abs(lit) / scale);
      }
    }
  }
  info("tilde equation taken literally at x' < 0: relative residual " + sci(literal_negative) +
       " (the diffusion term changes sign with x')");
  criterion(7, "symmetry suite", group < 1e-9 && brackets && flow < 1e-8 && tilde < 1e-9,
            "20 group elements x 7 variants residual " + sci(group) + "; brackets exact: " + (brackets ? "yes" : "no") +
                "; hidden flow eps=0.1 residual " + sci(flow) + "; tilde residual " + sci(tilde));
}

void criterion8() {
  using fv::symmetry::Generator;
  double q6 = 0.0;
  struct Q6Case {
    FamilySpec spec;
    double c1;
  };
  for (const auto& c : {Q6Case{FamilySpec::family1(0.0), 0.0}, Q6Case{FamilySpec::family6(0.0, 1), -1.0},
                        Q6Case{FamilySpec::family7(0.0, -1), 1.0}}) {
    const Box box = fv::cli::default_box(c.spec);
    const Point p{box.t0, box.x0};
    const int branch = fv::symmetry::q6_branch(fv::residual::jet_of_family(c.spec, p), p);
    q6 = std::max(q6, fv::symmetry::check_conditional(c.spec, {Generator::Q6, c.c1, branch}, box));
  }
  double q5 = 0.0, gcs_char = 0.0, gcs_con = 0.0;
  for (const auto& spec : cubic_variants()) {
    const Box box = fv::cli::default_box(spec);
    q5 = std::max(q5, fv::symmetry::check_conditional(spec, {Generator::Q5, cubic_coefficient(spec), 1}, box));
    const auto g = fv::symmetry::check_gcs(spec, box);
    gcs_char = std::max(gcs_char, g.characteristic);
    gcs_con = std::max(gcs_con, g.constraint);
  }

  // Characteristic with coefficient -1 on x^2 u u_xx, family 1 at eps = 0, x = -1.
  const Point p{0.0, -1.0};
  const Jet j = fv::residual::jet_of_family(FamilySpec::family1(0.0), p);
  const double printed = 8 * j.u * j.u + 8 * p.x * j.u * j.u_x + 5 * p.x * p.x * j.u_x * j.u_x -
                         p.x * p.x * j.u * j.u_xx + 6 * p.x * std::pow(j.u, 3.5);
  info("GCS characteristic with coefficient -1 on x^2 u u_xx: family 1 (eps=0) at x=-1 gives " + sci(printed) +
       " = (10/9) u^2 (" + sci(10.0 / 9.0 * j.u * j.u) + "); coefficient -2 gives " +
       sci(fv::symmetry::gcs_characteristic(j, p)));
  const Jet line{1.0, 0.0, 1.0, 0.0};
  info("differential constraint for u = x at x = 1: normalized defect " +
       sci(fv::symmetry::gcs_defect(line, {0.0, 1.0}).constraint) + " (w = x^{-7/2})");
  criterion(8, "conditional and GCS operators", q6 < 1e-8 && q5 < 1e-9 && gcs_char < 1e-9 && gcs_con < 1e-9,
            "Q6 " + sci(q6) + " on (1,c1=0),(6,c1=-1),(7,c1=1); Q5 " + sci(q5) + " on 1-5; GCS characteristic " +
                sci(gcs_char) + ", constraint " + sci(gcs_con));
}

void criterion9() {
  auto invoke = [](std::vector<std::string> args, std::string* out_text) {
    args.insert(args.begin(), "finverify");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = fv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return code;
  };
  std::string a, b;
  const int ca = invoke({"verify", "--format", "json"}, &a);
  const int cb = invoke({"verify", "--format", "json"}, &b);
  const bool identical = a == b && !a.empty();
  const int fail = invoke({"verify", "--family", "3", "--tol", "1e-30"}, nullptr);
  const int config = invoke({"verify", "--family", "1", "--epsilon", "0", "--x0", "0.5", "--x1", "2"}, nullptr);
  const int usage = invoke({"families", "--bogus"}, nullptr);
  const bool pass = identical && ca == 0 && cb == 0 && fail == 1 && config == 2 && usage == 2;
  criterion(9, "CLI determinism", pass,
            std::string("byte-identical reports: ") + (identical ? "yes" : "no") + " (" + std::to_string(a.size()) +
                " bytes); exit codes pass/fail/empty/usage = " + std::to_string(ca) + "/" + std::to_string(fail) +
                "/" + std::to_string(config) + "/" + std::to_string(usage));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& e) {
      criterion(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("SUMMARY %d of 9 criteria failed (%.1f s)\n", g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}
