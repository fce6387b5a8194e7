#pragma once

// Symmetries of u_t = (u^{-3/2} u_x)_x + u / x:
//  - the two-parameter Lie group G1 (time translations and the scaling
//    t -> e^d t, x -> e^d x, u -> e^{-2d/3} u) acting on fields,
//  - exact Lie brackets of the generator catalog,
//  - the flow of the hidden symmetry w^2 d_w - 2 w phi d_phi of the
//    stationary reduction,
//  - invariance checks for the reduction operators d_x + eta d_u and for the
//    generalized conditional symmetry / differential constraint of the
//    polynomial ansatz,
//  - the point transformation t' = t, x' = 1/x, u' = x^2 u.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "finverify/catalog.hpp"
#include "finverify/residual.hpp"
#include "finverify/taylor.hpp"
#include "finverify/types.hpp"

namespace finverify::symmetry {

// ---------------------------------------------------------------------------
// Finite group G1.

struct GroupElement {
  double delta0 = 0.0;  // time translation
  double delta1 = 0.0;  // scaling exponent

  static GroupElement identity() { return {}; }

  /// (this o h): apply h first, then this.
  GroupElement compose(const GroupElement& h) const;
  GroupElement inverse() const;

  /// Image (t', x') of a point.
  Point apply(Point p) const;
  Point preimage(Point p) const;
};

/// Pushes a field forward: u'(t', x') = e^{-2 d1/3} u(g^{-1}(t', x')).
residual::Field act(const GroupElement& g, const residual::Field& field);

// ---------------------------------------------------------------------------
// Exact polynomial vector fields and brackets.

class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Polynomial in three variables with rational coefficients.
class Polynomial {
 public:
  using Exponents = std::array<int, 3>;

  Polynomial() = default;
  static Polynomial constant(Rational c);
  /// c * var_0^e0 var_1^e1 var_2^e2
  static Polynomial monomial(Rational c, Exponents e);

  Polynomial derivative(int var) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Rational c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

/// sum_i coeffs[i] d/d(var_i)
struct VectorField {
  std::array<Polynomial, 3> coeffs;

  bool is_zero() const;
  friend bool operator==(const VectorField& a, const VectorField& b) = default;
};

/// [X, Y]^i = X(Y^i) - Y(X^i).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

enum class Generator {
  Dt,     // d_t                                   on (t, x, u)
  D,      // t d_t + x d_x - (2/3) u d_u           on (t, x, u)
  DHat,   // 3 w d_w - 2 phi d_phi                 on (w, phi)
  PiHat,  // w^2 d_w - 2 w phi d_phi               on (w, phi)
  Q6,     // d_x - 2 (u/x)(1 +- sqrt(c1 u - x u^{3/2})) d_u
  Q5,     // d_x - (u/(6x))(4 c1 x^3 u^{3/2} + 9 x u^{3/2} + 8) d_u
};

std::string to_string(Generator g);

struct VectorFieldId {
  Generator generator = Generator::Dt;
  double c1 = 0.0;  // Q6, Q5
  int branch = 1;   // Q6: sign in front of the square root
};

/// Polynomial coefficients of Dt, D, DHat and PiHat. Throws UnsupportedPair
/// for the non-polynomial reduction operators.
VectorField coefficients(Generator g);

/// coefficient * generator
struct LieTerm {
  Rational coefficient;
  Generator generator;
};

/// Bracket inside {Dt, D} or {DHat, PiHat}; nullopt means zero. Throws
/// UnsupportedPair for any other pair.
std::optional<LieTerm> bracket(const VectorFieldId& x, const VectorFieldId& y);

// ---------------------------------------------------------------------------
// Hidden symmetry of the stationary reduction.

/// A stationary profile phi(w) with its first two derivatives.
struct StationaryField {
  std::function<Taylor<2>(double)> jet;
};

/// phi(w) = u(x = w) for families 1, 6 and 7.
StationaryField stationary_field(const catalog::FamilySpec& spec);

/// Image of w under the PiHat flow: w / (1 - eps w).
double flow_pi_omega(double eps, double omega);

/// Flow of PiHat: phi'(w') = (1 - eps w)^2 phi(w) with w' = w / (1 - eps w).
/// Evaluation throws SingularPoint where 1 - eps w = 0.
StationaryField flow_pi(double eps, const StationaryField& profile);

/// ODE residual of a stationary field at w.
double stationary_residual(const StationaryField& f, double omega);

/// c0 reproduced by a stationary field at w: F(psi) - sign / w with
/// psi = -phi^{-1/2} / w.
double refit_c0(const StationaryField& f, int c1, int sign, double omega);

// ---------------------------------------------------------------------------
// Reduction operators and the generalized conditional symmetry.

/// eta of Q6 at (x, u). Throws DomainError when c1 u - x u^{3/2} < 0.
double q6_eta(double c1, int branch, double x, double u);

/// eta of Q5 at (x, u).
double q5_eta(double c1, double x, double u);

/// Q6 branch under which a jet is invariant: sign(-x u_x / (2u) - 1).
int q6_branch(const Jet& jet, Point p);

/// |u_x - eta| / max(|u_x|, 1e-30) at one point.
double conditional_defect(const Jet& jet, Point p, const VectorFieldId& op);

/// Max conditional defect over the admissible nodes of a box. Throws
/// UnsupportedPair unless op is Q6 or Q5, EmptyGrid when no node is valid.
double check_conditional(const catalog::FamilySpec& spec, const VectorFieldId& op,
                         const Box& box);

struct GcsReport {
  /// |8u^2 + 8xuu_x + 5x^2u_x^2 - 2x^2uu_xx + 6xu^{7/2}| / largest term.
  double characteristic = 0.0;
  /// |2x^3 (x^{-2} u^{-3/2})_xx + 9| / 9.
  double constraint = 0.0;

  double max() const { return characteristic > constraint ? characteristic : constraint; }
};

/// Characteristic of the generalized conditional symmetry at a jet.
double gcs_characteristic(const Jet& jet, Point p);

/// Normalization for gcs_characteristic: its largest term magnitude.
double gcs_scale(const Jet& jet, Point p);

/// 2x^3 (x^{-2} u^{-3/2})_xx, equal to -9 on the polynomial ansatz.
double differential_constraint(const Jet& jet, Point p);

GcsReport gcs_defect(const Jet& jet, Point p);

/// Max of both normalized defects over the admissible nodes of a box; only
/// families 1-5. Throws DomainError for families 6, 7.
GcsReport check_gcs(const catalog::FamilySpec& spec, const Box& box);

// ---------------------------------------------------------------------------
// Point transformation.

/// u'(t', x') = x'^{-2} u(t', 1/x'). An involution. Evaluation throws
/// SingularPoint at x' = 0.
residual::Field to_tilde(const residual::Field& field);

}  // namespace finverify::symmetry
