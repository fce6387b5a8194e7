#pragma once

#include <cmath>
#include <limits>

namespace finverify {

/// A point (t, x) of the space-time domain. x = 0 is singular for x^{-1}.
struct Point {
  double t = 0.0;
  double x = 0.0;
};

/// Open real interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double v) const { return v > lo && v < hi; }
  bool is_subset_of(const Interval& o) const { return lo >= o.lo && hi <= o.hi; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Value of a field with its first time derivative and first two space
/// derivatives at one point.
struct Jet {
  double u = 0.0;
  double u_t = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
};

/// Rectangle in (t, x) sampled with nt x nx nodes (end points included).
struct Box {
  double t0 = 0.0;
  double t1 = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  int nt = 1;
  int nx = 1;

  double t_at(int i) const { return nt <= 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1); }
  double x_at(int j) const { return nx <= 1 ? x0 : x0 + (x1 - x0) * j / (nx - 1); }
};

}  // namespace finverify
