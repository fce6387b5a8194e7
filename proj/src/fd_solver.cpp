#include "finverify/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

#include "finverify/errors.hpp"
#include "finverify/format.hpp"

namespace finverify::numerics {

namespace {

class Solver {
 public:
  explicit Solver(const GridRun& run) : run_(run) {
    if (run.n < 3) throw DomainError("fd_solve needs n >= 3");
    if (run.t1 < run.t0) throw DomainError("fd_solve needs t1 >= t0");
    if (!(run.x_hi > run.x_lo)) throw DomainError("fd_solve needs x_hi > x_lo");
    if (run.snapshots < 2) throw DomainError("fd_solve needs at least two snapshots");
    h_ = (run.x_hi - run.x_lo) / (run.n - 1);
    x_.resize(run.n);
    for (int i = 0; i < run.n; ++i) x_[i] = run.x_lo + h_ * i;
    x_.back() = run.x_hi;
    for (double xi : x_) {
      if (xi == 0.0) throw DomainBreach("grid contains x = 0");
    }
  }

  FdResult solve() {
    precheck_box();

    FdResult result;
    result.x = x_;
    std::vector<double> u(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) u[i] = exact(run_.t0, x_[i]);
    const std::vector<double> initial = u;
    result.min_u = *std::min_element(u.begin(), u.end());

    std::vector<double> targets(run_.snapshots);
    for (int k = 0; k < run_.snapshots; ++k) {
      targets[k] = run_.t0 + (run_.t1 - run_.t0) * k / (run_.snapshots - 1);
    }
    targets.back() = run_.t1;

    result.snapshots.push_back(snapshot(run_.t0, u));
    double t = run_.t0;
    for (std::size_t k = 1; k < targets.size(); ++k) {
      while (t < targets[k]) {
        const double bound = step_bound(u);
        double dt = bound;
        if (run_.dt > 0.0) {
          if (run_.dt > bound * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "fixed dt = " << run_.dt << " exceeds the stability bound " << bound
                << " at t = " << t;
            throw StabilityViolation(msg.str());
          }
          dt = run_.dt;
        }
        dt = std::min(dt, targets[k] - t);
        const double t_next = (targets[k] - t <= dt) ? targets[k] : t + dt;
        step(t, t_next - t, u);
        t = t_next;
        ++result.steps;
        check_guards(u, t);
        result.min_u = std::min(result.min_u, *std::min_element(u.begin(), u.end()));
      }
      result.snapshots.push_back(snapshot(t, u));
    }

    const Snapshot& last = result.snapshots.back();
    for (std::size_t i = 0; i < u.size(); ++i) {
      result.max_error = std::max(result.max_error, std::abs(u[i] - last.u_exact[i]));
      result.drift = std::max(result.drift, std::abs(u[i] - initial[i]));
    }
    return result;
  }

 private:
  double exact(double t, double x) const {
    try {
      return catalog::eval_u(run_.family, {t, x});
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "exact family left its validity region at (t=" << t << ", x=" << x
          << "): " << e.what();
      throw DomainBreach(msg.str());
    }
  }

  void precheck_box() const {
    constexpr int kTimeSamples = 64;
    for (int k = 0; k <= kTimeSamples; ++k) {
      const double t = run_.t0 + (run_.t1 - run_.t0) * k / kTimeSamples;
      for (double xi : x_) exact(t, xi);
    }
  }

  double step_bound(const std::vector<double>& u) const {
    double min_u32 = std::numeric_limits<double>::infinity();
    for (double ui : u) min_u32 = std::min(min_u32, ui * std::sqrt(ui));
    return run_.safety * h_ * h_ * min_u32 / 2.0;
  }

  void check_guards(const std::vector<double>& u, double t) const {
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!(u[i] > run_.u_min && u[i] < run_.u_max)) {
        std::ostringstream msg;
        msg << "field value " << u[i] << " at x = " << x_[i] << ", t = " << t
            << " left the guard band (" << run_.u_min << ", " << run_.u_max << ")";
        throw StabilityViolation(msg.str());
      }
    }
  }

  // Semi-discrete right-hand side on interior nodes; boundary entries are 0.
  void rhs(const std::vector<double>& u, std::vector<double>& out) {
    const std::size_t n = u.size();
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_[i] = 1.0 / (u[i] * std::sqrt(u[i]));
    const double inv_h2 = 1.0 / (h_ * h_);
    out[0] = 0.0;
    out[n - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double d_right = 0.5 * (d_[i] + d_[i + 1]);
      const double d_left = 0.5 * (d_[i - 1] + d_[i]);
      out[i] = (d_right * (u[i + 1] - u[i]) - d_left * (u[i] - u[i - 1])) * inv_h2 + u[i] / x_[i];
    }
  }

  void pin(std::vector<double>& y, double t) const {
    y.front() = exact(t, x_.front());
    y.back() = exact(t, x_.back());
  }

  void step(double t, double dt, std::vector<double>& u) {
    const std::size_t n = u.size();
    k1_.resize(n);
    k2_.resize(n);
    k3_.resize(n);
    k4_.resize(n);
    stage_.resize(n);

    rhs(u, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = u[i] + 0.5 * dt * k1_[i];
    pin(stage_, t + 0.5 * dt);
    rhs(stage_, k2_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = u[i] + 0.5 * dt * k2_[i];
    pin(stage_, t + 0.5 * dt);
    rhs(stage_, k3_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = u[i] + dt * k3_[i];
    pin(stage_, t + dt);
    rhs(stage_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
    pin(u, t + dt);
  }

  Snapshot snapshot(double t, const std::vector<double>& u) const {
    Snapshot s;
    s.t = t;
    s.u_numeric = u;
    s.u_exact.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) s.u_exact[i] = exact(t, x_[i]);
    return s;
  }

  const GridRun& run_;
  double h_ = 0.0;
  std::vector<double> x_;
  std::vector<double> d_, k1_, k2_, k3_, k4_, stage_;
};

}  // namespace

FdResult fd_solve(const GridRun& run) { return Solver(run).solve(); }

void FdResult::write_csv(std::ostream& os) const {
  os << "t,x,u_numeric,u_exact,abs_error\n";
  for (const Snapshot& s : snapshots) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      os << format_double(s.t) << ',' << format_double(x[i]) << ','
         << format_double(s.u_numeric[i]) << ',' << format_double(s.u_exact[i]) << ','
         << format_double(std::abs(s.u_numeric[i] - s.u_exact[i])) << '\n';
    }
  }
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << "n,max_error,observed_order\n";
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    os << sizes[k] << ',' << format_double(errors[k]) << ',';
    if (k > 0) os << format_double(orders[k - 1]);
    os << '\n';
  }
}

ConvergenceReport convergence_study(const GridRun& base, const std::vector<int>& sizes) {
  if (sizes.size() < 3) throw DomainError("convergence study needs at least three grids");
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    if (sizes[k] <= sizes[k - 1]) throw DomainError("grid sizes must be strictly increasing");
  }

  std::vector<std::future<FdResult>> runs;
  runs.reserve(sizes.size());
  for (int n : sizes) {
    GridRun run = base;
    run.n = n;
    run.snapshots = 2;
    runs.push_back(std::async(std::launch::async, [run] { return fd_solve(run); }));
  }

  ConvergenceReport report;
  report.sizes = sizes;
  for (auto& f : runs) report.errors.push_back(f.get().max_error);
  for (std::size_t k = 0; k + 1 < report.errors.size(); ++k) {
    const double a = report.errors[k];
    const double b = report.errors[k + 1];
    report.orders.push_back(a == 0.0 && b == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                 : std::log2(a / b));
  }
  return report;
}

}  // namespace finverify::numerics
