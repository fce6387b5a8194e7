#include "finverify/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "finverify/errors.hpp"

namespace finverify::numerics {

double solve_root(const ScalarFn& f, double lo, double hi, double tol, const ScalarFn& df) {
  if (lo > hi) std::swap(lo, hi);
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f = " << f_lo << ", " << f_hi;
    throw NoBracket(msg.str());
  }

  auto width_ok = [tol](double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return (b - a) <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * scale);
  };
  std::uintmax_t max_iter = 2000;
  auto [a, b] = boost::math::tools::bisect(f, lo, hi, width_ok, max_iter);

  double x = 0.5 * (a + b);
  double fx = f(x);
  if (df) {
    for (int i = 0; i < 2 && fx != 0.0; ++i) {
      const double d = df(x);
      if (d == 0.0 || !std::isfinite(d)) break;
      const double candidate = x - fx / d;
      if (candidate < a || candidate > b) break;
      const double fc = f(candidate);
      if (!(std::abs(fc) < std::abs(fx))) break;
      x = candidate;
      fx = fc;
    }
  }
  return x;
}

double quad(const ScalarFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (b < a) return -quad(f, b, a, tol);

  double error = 0.0;
  double l1 = 0.0;
  const double gk = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 10, 1e-15, &error, &l1);
  if (std::isfinite(gk) && error <= tol) return gk;

  // p = a + (b - a) s^2 (3 - 2 s) turns square-root endpoint behaviour into
  // a smooth integrand in s.
  const double span = b - a;
  auto smoothed = [&](double s) {
    const double w = 6.0 * s * (1.0 - s);
    return w == 0.0 ? 0.0 : f(a + span * s * s * (3.0 - 2.0 * s)) * w * span;
  };
  double sub_error = 0.0;
  const double sub = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      smoothed, 0.0, 1.0, 15, 1e-15, &sub_error, &l1);
  if (std::isfinite(sub) && sub_error <= tol) return sub;

  // Last resort: tanh-sinh clusters its nodes at both ends.
  boost::math::quadrature::tanh_sinh<double> integrator;
  double ts_error = 0.0;
  double ts = std::numeric_limits<double>::quiet_NaN();
  try {
    ts = integrator.integrate(f, a, b, 1e-15, &ts_error, &l1);
  } catch (const std::exception&) {
    ts_error = std::numeric_limits<double>::infinity();
  }
  if (std::isfinite(ts) && ts_error <= tol) return ts;

  std::ostringstream msg;
  msg << "quadrature on [" << a << ", " << b << "] missed tolerance " << tol
      << " (Gauss-Kronrod error " << error << ", substituted " << sub_error
      << ", tanh-sinh error " << ts_error << ")";
  throw QuadFailure(msg.str());
}

}  // namespace finverify::numerics
