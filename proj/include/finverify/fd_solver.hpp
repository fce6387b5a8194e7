#pragma once

// Method-of-lines solver for u_t = (u^{-3/2} u_x)_x + u / x on a uniform grid,
// with initial and Dirichlet boundary data taken from an exact family.
//
// Space: conservative central differences with arithmetic-mean interface
// diffusivity D_{i+1/2} = (D(u_i) + D(u_{i+1})) / 2, D(u) = u^{-3/2}.
// Time: classical RK4 with dt <= safety * h^2 * min(u^{3/2}) / 2.

#include <iosfwd>
#include <vector>

#include "finverify/catalog.hpp"

namespace finverify::numerics {

struct GridRun {
  double x_lo = 0.0;
  double x_hi = 1.0;
  int n = 101;
  double t0 = 0.0;
  double t1 = 0.0;
  /// Fixed step; 0 selects the stability bound at every step.
  double dt = 0.0;
  double safety = 0.4;
  catalog::FamilySpec family{};
  /// Number of evenly spaced snapshots including t0 and t1 (>= 2).
  int snapshots = 2;
  /// Blow-up guard on the numerical field.
  double u_min = 1e-6;
  double u_max = 1e6;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u_numeric;
  std::vector<double> u_exact;
};

struct FdResult {
  std::vector<double> x;
  std::vector<Snapshot> snapshots;
  /// max_i |u_i - u_exact(t1, x_i)|
  double max_error = 0.0;
  /// max_i |u_i(t1) - u_i(t0)|
  double drift = 0.0;
  /// Smallest u seen at any step.
  double min_u = 0.0;
  long steps = 0;

  /// Final numerical field.
  const std::vector<double>& final_field() const { return snapshots.back().u_numeric; }

  /// CSV with header t,x,u_numeric,u_exact,abs_error.
  void write_csv(std::ostream& os) const;
};

/// Throws StabilityViolation (positivity lost, guard hit or fixed dt above the
/// bound), DomainBreach (family invalid somewhere on the space-time box) or
/// DomainError (n < 3, t1 < t0).
FdResult fd_solve(const GridRun& run);

struct ConvergenceReport {
  std::vector<int> sizes;
  std::vector<double> errors;
  /// orders[k] = log2(errors[k] / errors[k + 1]); NaN when both are zero.
  std::vector<double> orders;

  /// CSV with header n,max_error,observed_order (order empty on the first row).
  void write_csv(std::ostream& os) const;
};

/// Runs fd_solve for each grid size concurrently (template supplies the box
/// and the family). Needs at least three strictly increasing sizes.
ConvergenceReport convergence_study(const GridRun& base, const std::vector<int>& sizes);

}  // namespace finverify::numerics
