#pragma once

#include <functional>

namespace finverify::numerics {

using ScalarFn = std::function<double(double)>;

/// Bracketed root of f on [lo, hi]: bisection until the bracket is narrower
/// than tol (relative to |root| for large roots), followed by up to two
/// Newton polish steps when df is supplied. A Newton step is kept only if it
/// stays in the final bracket and lowers |f|.
///
/// Throws NoBracket when f(lo) and f(hi) have the same strict sign.
double solve_root(const ScalarFn& f, double lo, double hi, double tol = 1e-14,
                  const ScalarFn& df = {});

/// Adaptive integral of f over [a, b] to absolute error tol. Gauss-Kronrod
/// subdivision first, then a smoothing substitution, then tanh-sinh.
/// quad(f, b, a) = -quad(f, a, b). Blow-up singularities are only resolved
/// at an endpoint equal to 0, where doubles are dense.
///
/// Throws QuadFailure when neither rule meets tol.
double quad(const ScalarFn& f, double a, double b, double tol = 1e-12);

/// One classical fourth-order Runge-Kutta step for y' = rhs(t, y).
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, double t, const State& y, double h) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace finverify::numerics
