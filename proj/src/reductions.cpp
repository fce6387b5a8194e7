#include "finverify/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "finverify/errors.hpp"
#include "finverify/format.hpp"
#include "finverify/numerics.hpp"

namespace finverify::reductions {

double stationary_ode_residual(double phi, double phi_w, double phi_ww, double omega) {
  if (!(phi > 0.0)) throw DomainError("stationary ODE requires phi > 0");
  if (omega == 0.0) throw SingularPoint("omega = 0");
  const double p32 = std::pow(phi, -1.5);
  return -1.5 * p32 / phi * phi_w * phi_w + p32 * phi_ww + phi / omega;
}

double similarity_ode_residual(double phi, double phi_w, double phi_ww, double omega) {
  if (omega == 0.0) throw SingularPoint("omega = 0");
  return phi * phi_ww - (2.0 / 3.0) * phi_w * phi_w + omega * phi_w - 1.5 * phi / omega - phi;
}

namespace {

void check_c1(int c1) {
  if (c1 < -1 || c1 > 1) throw DomainError("c1 must be normalized to -1, 0 or 1");
}

// psi + c1 psi^2, the radicand shared by F' and F.
double radicand(int c1, double psi) { return psi + c1 * psi * psi; }

void check_closure(int c1, double psi) {
  bool ok = false;
  switch (c1) {
    case -1:
      ok = psi >= 0.0 && psi <= 1.0;
      break;
    case 0:
      ok = psi >= 0.0;
      break;
    case 1:
      ok = psi >= 0.0 || psi <= -1.0;
      break;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "psi = " << psi << " outside the admissible region for c1 = " << c1;
    throw DomainError(msg.str());
  }
}

}  // namespace

Interval admissible_interval(int c1) {
  check_c1(c1);
  if (c1 == -1) return {0.0, 1.0};
  return {0.0, std::numeric_limits<double>::infinity()};
}

double orientation(int c1) { return c1 == -1 ? -1.0 : 1.0; }

double integrand(int c1, double psi) {
  check_c1(c1);
  check_closure(c1, psi);
  const double q = radicand(c1, psi);
  if (!(q > 0.0)) throw DomainError("integrand is singular at this psi");
  return orientation(c1) * psi / std::sqrt(q);
}

double integrand_derivative(int c1, double psi) {
  check_c1(c1);
  check_closure(c1, psi);
  const double q = radicand(c1, psi);
  if (!(q > 0.0)) throw DomainError("integrand derivative is singular at this psi");
  return orientation(c1) * psi / (2.0 * q * std::sqrt(q));
}

double antiderivative(int c1, double psi) {
  check_c1(c1);
  check_closure(c1, psi);
  switch (c1) {
    case -1:
      return std::sqrt(std::max(0.0, psi - psi * psi)) - 0.5 * std::asin(2.0 * psi - 1.0);
    case 0:
      return (2.0 / 3.0) * psi * std::sqrt(psi);
    default: {
      const double r = std::sqrt(std::max(0.0, psi + psi * psi));
      // (2psi+1+2r)(2psi+1-2r) = 1; use the factor without cancellation.
      const double log_abs = psi >= 0.0 ? std::log(2.0 * psi + 1.0 + 2.0 * r)
                                        : -std::log(std::abs(2.0 * psi + 1.0 - 2.0 * r));
      return r - 0.5 * log_abs;
    }
  }
}

Taylor<1> antiderivative_jet(int c1, double psi) {
  check_c1(c1);
  check_closure(c1, psi);
  using T = Taylor<1>;
  const T p = T::variable(psi);
  const T q = p + T(c1) * p * p;
  if (!(q.value() > 0.0)) throw DomainError("antiderivative jet needs an interior psi");
  switch (c1) {
    case -1: {
      const double y = 2.0 * psi - 1.0;
      const T arc = compose(T(2.0) * p - T(1.0), {std::asin(y), 1.0 / std::sqrt(1.0 - y * y)});
      return sqrt(q) - T(0.5) * arc;
    }
    case 0:
      return T(2.0 / 3.0) * p * sqrt(p);
    default: {
      const T r = sqrt(q);
      const T log_abs = psi >= 0.0 ? log(T(2.0) * p + T(1.0) + T(2.0) * r)
                                   : T(-1.0) * log(abs(T(2.0) * p + T(1.0) - T(2.0) * r));
      return r - T(0.5) * log_abs;
    }
  }
}

double antiderivative_quadrature(int c1, double a, double b, double tol) {
  check_c1(c1);
  check_closure(c1, a);
  check_closure(c1, b);
  if (c1 == 1 && (a < 0.0) != (b < 0.0)) {
    throw DomainError("quadrature interval straddles the gap (-1, 0)");
  }
  if (b < a) return -antiderivative_quadrature(c1, b, a, tol);
  auto plain = [c1](double psi) { return integrand(c1, psi); };
  if (c1 != -1 || b <= 0.5) return numerics::quad(plain, a, b, tol);

  // Doubles cannot get closer to psi = 1 than ~1e-16, which truncates the
  // inverse-square-root end. Integrate the upper half in d = 1 - psi instead.
  auto reflected = [](double d) {
    if (!(d > 0.0) || d > 1.0) throw DomainError("integrand is singular at this psi");
    const double psi = 1.0 - d;
    return orientation(-1) * psi / std::sqrt(psi * d);
  };
  const double mid = std::max(a, 0.5);
  const double lower = a < mid ? numerics::quad(plain, a, mid, 0.5 * tol) : 0.0;
  return lower + numerics::quad(reflected, 1.0 - b, 1.0 - mid, 0.5 * tol);
}

void StationaryProfile::validate() const {
  check_c1(c1);
  if (sign != 1 && sign != -1) throw DomainError("profile sign must be +1 or -1");
  if (!(psi_interval.lo < psi_interval.hi)) throw DomainError("empty psi interval");
  bool ok = false;
  switch (c1) {
    case -1:
      ok = psi_interval.is_subset_of({0.0, 1.0});
      break;
    case 0:
      ok = psi_interval.lo >= 0.0;
      break;
    case 1:
      ok = psi_interval.lo >= 0.0 || psi_interval.hi <= -1.0;
      break;
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "psi interval (" << psi_interval.lo << ", " << psi_interval.hi
        << ") is not admissible for c1 = " << c1;
    throw DomainError(msg.str());
  }
}

double psi_from_x(const StationaryProfile& profile, double x) {
  profile.validate();
  if (x == 0.0) throw SingularPoint("x = 0");
  if (!profile.x_domain.contains(x)) throw DomainError("x outside the profile x-domain");
  if (!std::isfinite(profile.psi_interval.lo)) {
    throw DomainError("unbounded psi branch: supply a compact psi interval");
  }

  const int c1 = profile.c1;
  const double rhs = profile.sign / x + profile.c0;
  auto F = [c1](double psi) { return antiderivative(c1, psi); };

  const double lo = profile.psi_interval.lo + kEndpointMargin;
  double hi = profile.psi_interval.hi;
  if (std::isfinite(hi)) {
    hi -= kEndpointMargin;
  } else {
    // F grows without bound on the positive branches.
    hi = std::max(1.0, 2.0 * lo);
    while (F(hi) < rhs) {
      hi *= 2.0;
      if (hi > 1e150) break;
    }
  }
  if (!(lo < hi)) throw OutOfRange("psi interval too narrow");

  const double f_lo = F(lo);
  const double f_hi = F(hi);
  if (rhs < std::min(f_lo, f_hi) || rhs > std::max(f_lo, f_hi)) {
    std::ostringstream msg;
    msg << "rhs = " << rhs << " outside the range [" << std::min(f_lo, f_hi) << ", "
        << std::max(f_lo, f_hi) << "] of F on the psi interval";
    throw OutOfRange(msg.str());
  }

  const double psi = numerics::solve_root([&](double p) { return F(p) - rhs; }, lo, hi, 1e-14,
                                          [c1](double p) { return integrand(c1, p); });
  const double miss = std::abs(F(psi) - rhs);
  if (!(miss < 1e-12 * std::max(1.0, std::abs(rhs)))) {
    std::ostringstream msg;
    msg << "root stagnated: |F(psi) - rhs| = " << miss << " at psi = " << psi;
    throw RootFailure(msg.str());
  }
  return psi;
}

Taylor<2> psi_jet(const StationaryProfile& profile, double x) {
  const double psi = psi_from_x(profile, x);
  const double fp = integrand(profile.c1, psi);
  const double fpp = integrand_derivative(profile.c1, psi);
  const double s = profile.sign;
  const double psi_x = -s / (x * x * fp);
  const double psi_xx = 2.0 * s / (x * x * x * fp) + s * fpp * psi_x / (x * x * fp * fp);
  Taylor<2> jet(psi);
  jet[1] = psi_x;
  jet[2] = 0.5 * psi_xx;
  return jet;
}

Taylor<2> stationary_u_jet(const StationaryProfile& profile, double x) {
  const Taylor<2> w = Taylor<2>::variable(x) * psi_jet(profile, x);
  return Taylor<2>(1.0) / (w * w);
}

double first_integral_defect(int c1, double x, double psi, double psi_x) {
  const double x2 = x * x;
  return std::abs(x2 * x2 * psi_x * psi_x - 1.0 / psi - c1);
}

double first_integral_defect(const StationaryProfile& profile, double x) {
  const Taylor<2> jet = psi_jet(profile, x);
  return first_integral_defect(profile.c1, x, jet[0], jet[1]);
}

namespace {

double ansatz_phi1(const AnsatzCase& c) {
  switch (c.case_id) {
    case 1:
      return -c.epsilon * c.epsilon;
    case 2:
      return 0.0;
    case 3:
      return 1.0;
    case 4:
    case 5:
      return -1.0;
    default:
      throw DomainError("ansatz case must be 1..5, got " + std::to_string(c.case_id));
  }
}

}  // namespace

Taylor<1> ansatz_phi2(const AnsatzCase& c, const Taylor<1>& t, double pole_threshold) {
  const double t0 = t.value();
  switch (c.case_id) {
    case 1:
      return Taylor<1>(3.0 * c.epsilon);
    case 2:
      if (t0 == 0.0) throw SingularPoint("case 2 is singular at t = 0");
      return Taylor<1>(1.5) / t;
    case 3: {
      const double arg = 2.0 * t0 - std::numbers::pi / 2.0;
      if (std::abs(arg - std::numbers::pi * std::round(arg / std::numbers::pi)) < pole_threshold) {
        throw SingularPoint("tan(2t) pole");
      }
      return Taylor<1>(-3.0) * tan(Taylor<1>(2.0) * t);
    }
    case 4:
      return Taylor<1>(3.0) * tanh(Taylor<1>(2.0) * t);
    case 5:
      if (std::abs(2.0 * t0) < pole_threshold) throw SingularPoint("coth(2t) pole at t = 0");
      return Taylor<1>(3.0) * coth(Taylor<1>(2.0) * t);
    default:
      throw DomainError("ansatz case must be 1..5, got " + std::to_string(c.case_id));
  }
}

std::pair<double, double> ansatz_coeffs(const AnsatzCase& c, double t, double pole_threshold) {
  const double phi1 = ansatz_phi1(c);
  return {phi1, ansatz_phi2(c, Taylor<1>(t), pole_threshold).value()};
}

std::pair<double, double> ansatz_system_defect(const AnsatzCase& c, double t) {
  const double phi1 = ansatz_phi1(c);
  const Taylor<1> phi2 = ansatz_phi2(c, Taylor<1>::variable(t));
  // phi1 is constant in every case, so its derivative vanishes identically.
  const double d1 = 0.0;
  const double d2 = std::abs(phi2[1] - ansatz_rhs(phi1, phi2[0]));
  return {d1, d2};
}

void Trajectory::write_csv(std::ostream& os) const {
  os << "t,phi1,phi2\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_double(t[i]) << ',' << format_double(phi1) << ',' << format_double(phi2[i])
       << '\n';
  }
}

Trajectory integrate_ansatz(double phi1, double phi2_0, double t0, double t1, double step,
                            double blowup_bound) {
  if (!(step > 0.0)) throw DomainError("integrate_ansatz: step must be positive");
  if (t1 < t0) throw DomainError("integrate_ansatz: t1 < t0");

  Trajectory traj;
  traj.phi1 = phi1;
  traj.t.push_back(t0);
  traj.phi2.push_back(phi2_0);

  auto rhs = [phi1](double, double y) { return ansatz_rhs(phi1, y); };
  const auto n_steps = static_cast<long>(std::ceil((t1 - t0) / step - 1e-9));
  double y = phi2_0;
  for (long i = 0; i < n_steps; ++i) {
    const double t = t0 + static_cast<double>(i) * step;
    const double h = (i + 1 == n_steps) ? t1 - t : step;
    y = numerics::rk4_step(rhs, t, y, h);
    if (!std::isfinite(y) || std::abs(y) > blowup_bound) {
      std::ostringstream msg;
      msg << "phi2 exceeded " << blowup_bound << " near t = " << t + h;
      throw BlowUp(msg.str());
    }
    traj.t.push_back(i + 1 == n_steps ? t1 : t + h);
    traj.phi2.push_back(y);
  }
  return traj;
}

}  // namespace finverify::reductions
