#pragma once

// Reduced ODEs, the psi-substitution for stationary profiles, the closed-form
// antiderivatives F(psi) with their quadrature oracle, and the polynomial
// ansatz v = phi1(t) x^3 + phi2(t) x^2 - (9/4) x with its coefficient system.

#include <iosfwd>
#include <utility>
#include <vector>

#include "finverify/taylor.hpp"
#include "finverify/types.hpp"

namespace finverify::reductions {

/// (phi^{-3/2} phi_w)_w + phi / w, expanded. Zero on stationary solutions.
double stationary_ode_residual(double phi, double phi_w, double phi_ww, double omega);

/// phi phi_ww - (2/3) phi_w^2 + w phi_w - (3/2) phi / w - phi for the scaling
/// reduction v = t phi(x / t).
double similarity_ode_residual(double phi, double phi_w, double phi_ww, double omega);

// ---------------------------------------------------------------------------
// Quadratures of the first integral  w^4 psi_w^2 = 1/psi + c1.

/// Admissible psi region for each normalized c1. For c1 = 1 this is the
/// positive branch; the branch psi < -1 is accepted by the solver when the
/// profile interval says so.
Interval admissible_interval(int c1);

/// Orientation of F: -1 for c1 = -1 (F decreasing on (0,1)), +1 otherwise.
double orientation(int c1);

/// Oriented integrand F'(psi) = orientation(c1) * psi / sqrt(psi + c1 psi^2).
double integrand(int c1, double psi);

/// Closed-form antiderivative F with F' = integrand(c1, .):
///   c1 = -1 : sqrt(psi - psi^2) - asin(2 psi - 1) / 2
///   c1 =  0 : (2/3) psi^{3/2}
///   c1 =  1 : sqrt(psi + psi^2) - ln|2 psi + 1 + 2 sqrt(psi + psi^2)| / 2
/// Throws DomainError outside the closure of the admissible region.
double antiderivative(int c1, double psi);

/// Second derivative F'' = orientation * psi / (2 (psi + c1 psi^2)^{3/2}).
double integrand_derivative(int c1, double psi);

/// The closed form carried through a first-order jet, so derivative(1) is the
/// exact slope of F (not a difference quotient). Interior psi only.
Taylor<1> antiderivative_jet(int c1, double psi);

/// Adaptive numerical integral of integrand(c1, .) over [a, b]; independent
/// of antiderivative(). Throws QuadFailure when tol is not met.
double antiderivative_quadrature(int c1, double a, double b, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Stationary profiles  F(psi) = sign / x + c0,  psi = -u^{-1/2} / x.

struct StationaryProfile {
  int c1 = -1;
  double c0 = 0.0;
  int sign = 1;
  Interval psi_interval{0.0, 1.0};
  Interval x_domain{};

  /// Throws DomainError when the invariants on c1, sign and the psi
  /// interval are violated.
  void validate() const;
};

/// Roots closer than this to an end of the psi interval are rejected.
inline constexpr double kEndpointMargin = 1e-10;

/// Unique psi on the profile interval with F(psi) = sign / x + c0.
/// Throws OutOfRange, RootFailure, SingularPoint (x = 0) or DomainError.
double psi_from_x(const StationaryProfile& profile, double x);

/// psi, psi_x, psi_xx at x by implicit differentiation of the relation.
Taylor<2> psi_jet(const StationaryProfile& profile, double x);

/// u = (x psi)^{-2} expanded to second order in x.
Taylor<2> stationary_u_jet(const StationaryProfile& profile, double x);

/// |x^4 psi_x^2 - 1/psi - c1| for the profile at x.
double first_integral_defect(const StationaryProfile& profile, double x);

/// Same identity for explicitly supplied psi and psi_x.
double first_integral_defect(int c1, double x, double psi, double psi_x);

// ---------------------------------------------------------------------------
// Polynomial ansatz.

/// Cases 1..5 correspond to catalog families 1..5. Coefficients follow the
/// sign convention that makes v = phi1 x^3 + phi2 x^2 - (9/4) x reproduce the
/// catalog families:
///   1: (-eps^2, 3 eps)   2: (0, 3 / (2 t))   3: (1, -3 tan 2t)
///   4: (-1, 3 tanh 2t)   5: (-1, 3 coth 2t)
struct AnsatzCase {
  int case_id = 1;
  double epsilon = 0.0;  // case 1 only
};

/// phi2 as a series in t (order 1 gives the exact time derivative).
Taylor<1> ansatz_phi2(const AnsatzCase& c, const Taylor<1>& t, double pole_threshold = 1e-8);

std::pair<double, double> ansatz_coeffs(const AnsatzCase& c, double t,
                                        double pole_threshold = 1e-8);

/// Right-hand side of phi2' = -6 phi1 - (2/3) phi2^2.
inline double ansatz_rhs(double phi1, double phi2) { return -6.0 * phi1 - (2.0 / 3.0) * phi2 * phi2; }

/// (|phi1_t|, |phi2_t + 6 phi1 + (2/3) phi2^2|) from exact derivatives.
std::pair<double, double> ansatz_system_defect(const AnsatzCase& c, double t);

struct Trajectory {
  double phi1 = 0.0;
  std::vector<double> t;
  std::vector<double> phi2;

  /// CSV with header t,phi1,phi2.
  void write_csv(std::ostream& os) const;
};

/// Classical RK4 integration of phi2' = -6 phi1 - (2/3) phi2^2 from t0 to t1.
/// The final step is shortened to land on t1. Throws BlowUp when |phi2|
/// exceeds blowup_bound.
Trajectory integrate_ansatz(double phi1, double phi2_0, double t0, double t1, double step,
                            double blowup_bound = 1e6);

}  // namespace finverify::reductions
