#include "finverify/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "finverify/errors.hpp"
#include "finverify/reductions.hpp"

namespace finverify::symmetry {

// ---------------------------------------------------------------------------
// Group action.

GroupElement GroupElement::compose(const GroupElement& h) const {
  return {std::exp(delta1) * h.delta0 + delta0, delta1 + h.delta1};
}

GroupElement GroupElement::inverse() const { return {-std::exp(-delta1) * delta0, -delta1}; }

Point GroupElement::apply(Point p) const {
  const double s = std::exp(delta1);
  return {s * p.t + delta0, s * p.x};
}

Point GroupElement::preimage(Point p) const {
  const double s = std::exp(-delta1);
  return {s * (p.t - delta0), s * p.x};
}

residual::Field act(const GroupElement& g, const residual::Field& field) {
  const double u_scale = std::exp(-2.0 * g.delta1 / 3.0);
  const double inv = std::exp(-g.delta1);  // d(t, x)/d(t', x')
  residual::Field out;
  out.jet = [g, field, u_scale, inv](Point p) {
    const Jet j = field.jet(g.preimage(p));
    return Jet{u_scale * j.u, u_scale * inv * j.u_t, u_scale * inv * j.u_x,
               u_scale * inv * inv * j.u_xx};
  };
  out.admissible = [g, field](Point p) { return field.admissible(g.preimage(p)); };
  return out;
}

// ---------------------------------------------------------------------------
// Rationals and polynomial vector fields.

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator-(const Rational& a, const Rational& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
Rational operator*(const Rational& a, const Rational& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
Rational operator/(const Rational& a, const Rational& b) {
  return {a.num_ * b.den_, a.den_ * b.num_};
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Polynomial Polynomial::constant(Rational c) { return monomial(c, {0, 0, 0}); }

Polynomial Polynomial::monomial(Rational c, Exponents e) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * Rational(e[var]));
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, Rational(0) - c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(Rational c, const Polynomial& p) { return Polynomial::constant(c) * p; }

bool VectorField::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

namespace {

// X(f) = sum_i X^i df/dvar_i
Polynomial apply_field(const VectorField& x, const Polynomial& f) {
  Polynomial out;
  for (int i = 0; i < 3; ++i) out = out + x.coeffs[i] * f.derivative(i);
  return out;
}

bool is_lie_pair(Generator g) { return g == Generator::Dt || g == Generator::D; }
bool is_hidden_pair(Generator g) { return g == Generator::DHat || g == Generator::PiHat; }

}  // namespace

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  VectorField out;
  for (int i = 0; i < 3; ++i) out.coeffs[i] = apply_field(x, y.coeffs[i]) - apply_field(y, x.coeffs[i]);
  return out;
}

std::string to_string(Generator g) {
  switch (g) {
    case Generator::Dt:
      return "Dt";
    case Generator::D:
      return "D";
    case Generator::DHat:
      return "DHat";
    case Generator::PiHat:
      return "PiHat";
    case Generator::Q6:
      return "Q6";
    case Generator::Q5:
      return "Q5";
  }
  return "?";
}

VectorField coefficients(Generator g) {
  using P = Polynomial;
  VectorField f;
  switch (g) {
    case Generator::Dt:
      f.coeffs[0] = P::constant(1);
      break;
    case Generator::D:
      f.coeffs[0] = P::monomial(1, {1, 0, 0});
      f.coeffs[1] = P::monomial(1, {0, 1, 0});
      f.coeffs[2] = P::monomial(Rational(-2, 3), {0, 0, 1});
      break;
    case Generator::DHat:
      f.coeffs[0] = P::monomial(3, {1, 0, 0});
      f.coeffs[1] = P::monomial(-2, {0, 1, 0});
      break;
    case Generator::PiHat:
      f.coeffs[0] = P::monomial(1, {2, 0, 0});
      f.coeffs[1] = P::monomial(-2, {1, 1, 0});
      break;
    default:
      throw UnsupportedPair(to_string(g) + " has no polynomial coefficients");
  }
  return f;
}

std::optional<LieTerm> bracket(const VectorFieldId& x, const VectorFieldId& y) {
  const bool same_algebra = (is_lie_pair(x.generator) && is_lie_pair(y.generator)) ||
                            (is_hidden_pair(x.generator) && is_hidden_pair(y.generator));
  if (!same_algebra) {
    throw UnsupportedPair("bracket of " + to_string(x.generator) + " and " +
                          to_string(y.generator) + " is not supported");
  }
  const VectorField z = lie_bracket(coefficients(x.generator), coefficients(y.generator));
  if (z.is_zero()) return std::nullopt;

  const std::array<Generator, 2> basis = is_lie_pair(x.generator)
                                             ? std::array{Generator::Dt, Generator::D}
                                             : std::array{Generator::DHat, Generator::PiHat};
  for (Generator g : basis) {
    const VectorField b = coefficients(g);
    // The ratio fixed by any nonzero term must reproduce every component.
    std::optional<Rational> ratio;
    for (int i = 0; i < 3 && !ratio; ++i) {
      if (!b.coeffs[i].is_zero()) {
        const auto& [e, c] = *b.coeffs[i].terms().begin();
        const auto it = z.coeffs[i].terms().find(e);
        ratio = it == z.coeffs[i].terms().end() ? Rational(0) : it->second / c;
      }
    }
    if (!ratio || ratio->is_zero()) continue;
    bool match = true;
    for (int i = 0; i < 3; ++i) match = match && (z.coeffs[i] == *ratio * b.coeffs[i]);
    if (match) return LieTerm{*ratio, g};
  }
  throw UnsupportedPair("bracket is not a multiple of a catalog generator");
}

// ---------------------------------------------------------------------------
// Hidden symmetry.

StationaryField stationary_field(const catalog::FamilySpec& spec) {
  if (!spec.is_stationary()) {
    throw DomainError("family " + std::to_string(spec.family_id) + " is not stationary");
  }
  StationaryField f;
  if (spec.family_id == 1) {
    f.jet = [spec](double omega) {
      const Jet j = residual::jet_of_family(spec, {0.0, omega});
      Taylor<2> out(j.u);
      out[1] = j.u_x;
      out[2] = 0.5 * j.u_xx;
      return out;
    };
  } else {
    const auto profile = spec.profile();
    f.jet = [profile](double omega) { return reductions::stationary_u_jet(profile, omega); };
  }
  return f;
}

double flow_pi_omega(double eps, double omega) {
  const double d = 1.0 - eps * omega;
  if (d == 0.0) throw SingularPoint("PiHat flow: 1 - eps w = 0");
  return omega / d;
}

StationaryField flow_pi(double eps, const StationaryField& profile) {
  StationaryField out;
  out.jet = [eps, profile](double omega_new) {
    const double denom = 1.0 + eps * omega_new;  // = 1 / (1 - eps w)
    if (denom == 0.0) throw SingularPoint("PiHat flow: 1 - eps w = 0");
    const Taylor<2> w_new = Taylor<2>::variable(omega_new);
    const Taylor<2> scale = Taylor<2>(1.0) / (Taylor<2>(1.0) + Taylor<2>(eps) * w_new);
    const Taylor<2> w = w_new * scale;
    const Taylor<2> phi = profile.jet(w.value());
    const Taylor<2> phi_of_w = compose(w, {phi[0], phi.derivative(1), phi.derivative(2)});
    return phi_of_w * scale * scale;
  };
  return out;
}

double stationary_residual(const StationaryField& f, double omega) {
  const Taylor<2> j = f.jet(omega);
  return reductions::stationary_ode_residual(j.value(), j.derivative(1), j.derivative(2), omega);
}

double refit_c0(const StationaryField& f, int c1, int sign, double omega) {
  const double phi = f.jet(omega).value();
  if (!(phi > 0.0)) throw DomainError("refit_c0 requires phi > 0");
  const double psi = -1.0 / (std::sqrt(phi) * omega);
  return reductions::antiderivative(c1, psi) - sign / omega;
}

// ---------------------------------------------------------------------------
// Reduction operators.

double q6_eta(double c1, int branch, double x, double u) {
  const double arg = c1 * u - x * u * std::sqrt(u);
  if (arg < 0.0) {
    std::ostringstream msg;
    msg << "Q6: c1 u - x u^{3/2} = " << arg << " < 0";
    throw DomainError(msg.str());
  }
  return -2.0 * (u / x) * (1.0 + branch * std::sqrt(arg));
}

double q5_eta(double c1, double x, double u) {
  const double u32 = u * std::sqrt(u);
  return -(u / (6.0 * x)) * (4.0 * c1 * x * x * x * u32 + 9.0 * x * u32 + 8.0);
}

int q6_branch(const Jet& jet, Point p) { return -p.x * jet.u_x / (2.0 * jet.u) - 1.0 >= 0.0 ? 1 : -1; }

double conditional_defect(const Jet& jet, Point p, const VectorFieldId& op) {
  if (p.x == 0.0) throw SingularPoint("x = 0");
  double eta = 0.0;
  switch (op.generator) {
    case Generator::Q6:
      eta = q6_eta(op.c1, op.branch, p.x, jet.u);
      break;
    case Generator::Q5:
      eta = q5_eta(op.c1, p.x, jet.u);
      break;
    default:
      throw UnsupportedPair("conditional check needs Q6 or Q5, got " + to_string(op.generator));
  }
  return std::abs(jet.u_x - eta) / std::max(std::abs(jet.u_x), 1e-30);
}

double check_conditional(const catalog::FamilySpec& spec, const VectorFieldId& op,
                         const Box& box) {
  const residual::Field field = residual::family_field(spec);
  double worst = 0.0;
  long samples = 0;
  for (int i = 0; i < std::max(box.nt, 1); ++i) {
    for (int j = 0; j < std::max(box.nx, 1); ++j) {
      const Point p{box.t_at(i), box.x_at(j)};
      if (p.x == 0.0 || !field.admissible(p)) continue;
      const double d = conditional_defect(field.jet(p), p, op);
      ++samples;
      if (!(d <= worst)) worst = d;
    }
  }
  if (samples == 0) throw EmptyGrid("no admissible points for the conditional check");
  return worst;
}

double gcs_characteristic(const Jet& j, Point p) {
  const double x = p.x;
  const double u = j.u;
  return 8.0 * u * u + 8.0 * x * u * j.u_x + 5.0 * x * x * j.u_x * j.u_x -
         2.0 * x * x * u * j.u_xx + 6.0 * x * u * u * u * std::sqrt(u);
}

double gcs_scale(const Jet& j, Point p) {
  const double x = p.x;
  const double u = j.u;
  return std::max({std::abs(8.0 * u * u), std::abs(8.0 * x * u * j.u_x),
                   std::abs(5.0 * x * x * j.u_x * j.u_x), std::abs(2.0 * x * x * u * j.u_xx),
                   std::abs(6.0 * x * u * u * u * std::sqrt(u)), 1e-30});
}

double differential_constraint(const Jet& j, Point p) {
  if (!(j.u > 0.0)) throw DomainError("differential constraint requires u > 0");
  // w = x^{-2} u^{-3/2} expanded in x from the jet of u.
  const Taylor<2> x = Taylor<2>::variable(p.x);
  Taylor<2> u(j.u);
  u[1] = j.u_x;
  u[2] = 0.5 * j.u_xx;
  const Taylor<2> w = pow(u, -1.5) / (x * x);
  return 2.0 * p.x * p.x * p.x * w.derivative(2);
}

GcsReport gcs_defect(const Jet& jet, Point p) {
  GcsReport r;
  r.characteristic = std::abs(gcs_characteristic(jet, p)) / gcs_scale(jet, p);
  r.constraint = std::abs(differential_constraint(jet, p) + 9.0) / 9.0;
  return r;
}

GcsReport check_gcs(const catalog::FamilySpec& spec, const Box& box) {
  if (!spec.is_cubic()) {
    throw DomainError("the differential constraint holds for families 1-5 only");
  }
  const residual::Field field = residual::family_field(spec);
  GcsReport worst;
  long samples = 0;
  for (int i = 0; i < std::max(box.nt, 1); ++i) {
    for (int j = 0; j < std::max(box.nx, 1); ++j) {
      const Point p{box.t_at(i), box.x_at(j)};
      if (p.x == 0.0 || !field.admissible(p)) continue;
      const GcsReport r = gcs_defect(field.jet(p), p);
      ++samples;
      if (!(r.characteristic <= worst.characteristic)) worst.characteristic = r.characteristic;
      if (!(r.constraint <= worst.constraint)) worst.constraint = r.constraint;
    }
  }
  if (samples == 0) throw EmptyGrid("no admissible points for the GCS check");
  return worst;
}

// ---------------------------------------------------------------------------
// Point transformation.

residual::Field to_tilde(const residual::Field& field) {
  residual::Field out;
  out.jet = [field](Point p) {
    if (p.x == 0.0) throw SingularPoint("x' = 0");
    const Taylor<2> xt = Taylor<2>::variable(p.x);
    const Taylor<2> x = Taylor<2>(1.0) / xt;
    const Jet j = field.jet({p.t, x.value()});
    const Taylor<2> u_of_x = compose(x, {j.u, j.u_x, j.u_xx});
    const Taylor<2> inv_sq = Taylor<2>(1.0) / (xt * xt);
    const Taylor<2> ut = u_of_x * inv_sq;
    return Jet{ut.value(), inv_sq.value() * j.u_t, ut.derivative(1), ut.derivative(2)};
  };
  out.admissible = [field](Point p) { return p.x != 0.0 && field.admissible({p.t, 1.0 / p.x}); };
  return out;
}

}  // namespace finverify::symmetry
