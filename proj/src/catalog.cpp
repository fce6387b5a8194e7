#include "finverify/catalog.hpp"

#include <sstream>
#include <string>

#include "finverify/format.hpp"

namespace finverify::catalog {

FamilySpec FamilySpec::family1(double epsilon) {
  FamilySpec s;
  s.family_id = 1;
  s.epsilon = epsilon;
  s.validate();
  return s;
}

FamilySpec FamilySpec::cubic(int family_id) {
  FamilySpec s;
  s.family_id = family_id;
  if (family_id < 2 || family_id > 5) {
    throw DomainError("FamilySpec::cubic expects family 2..5, got " + std::to_string(family_id));
  }
  return s;
}

FamilySpec FamilySpec::family6(double c0, int sign, Interval psi) {
  FamilySpec s;
  s.family_id = 6;
  s.c0 = c0;
  s.branch_sign = sign;
  s.psi_interval = psi;
  s.validate();
  return s;
}

FamilySpec FamilySpec::family7(double c0, int sign, Interval psi) {
  FamilySpec s;
  s.family_id = 7;
  s.c0 = c0;
  s.branch_sign = sign;
  s.psi_interval = psi;
  s.validate();
  return s;
}

void FamilySpec::validate() const {
  if (family_id < 1 || family_id > 7) {
    throw DomainError("family_id must be in 1..7, got " + std::to_string(family_id));
  }
  if (family_id == 1 && epsilon != -1.0 && epsilon != 0.0 && epsilon != 1.0) {
    throw DomainError("family 1 requires epsilon in {-1, 0, 1}");
  }
  if (family_id == 6 || family_id == 7) profile().validate();
}

reductions::StationaryProfile FamilySpec::profile() const {
  if (family_id != 6 && family_id != 7) {
    throw DomainError("only families 6 and 7 are implicit profiles");
  }
  reductions::StationaryProfile p;
  p.c1 = family_id == 6 ? -1 : 1;
  p.c0 = c0;
  p.sign = branch_sign;
  p.psi_interval = psi_interval;
  return p;
}

std::string FamilySpec::params_tag() const {
  switch (family_id) {
    case 1:
      return "eps=" + format_double(epsilon);
    case 6:
    case 7:
      return "c0=" + format_double(c0) + ";sign=" + std::to_string(branch_sign) + ";psi=(" +
             format_double(psi_interval.lo) + ":" + format_double(psi_interval.hi) + ")";
    default:
      return "-";
  }
}

double eval_v(const FamilySpec& spec, Point p, const Options& opts) {
  if (p.x == 0.0) throw SingularPoint("x = 0");
  if (spec.is_cubic()) {
    const double v = cubic_base(spec, p.t, p.x, opts);
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "family " << spec.family_id << ": base " << v << " <= 0 at (t=" << p.t
          << ", x=" << p.x << ")";
      throw DomainError(msg.str());
    }
    return v;
  }
  spec.validate();
  const double psi = reductions::psi_from_x(spec.profile(), p.x);
  const double w = -p.x * psi;
  if (!(w > 0.0)) throw DomainError("stationary profile requires sign(x) = -sign(psi)");
  return w * w * w;
}

double eval_u(const FamilySpec& spec, Point p, const Options& opts) {
  return std::pow(eval_v(spec, p, opts), -2.0 / 3.0);
}

bool validity(const FamilySpec& spec, Point p, const Options& opts) noexcept {
  try {
    const double u = eval_u(spec, p, opts);
    return std::isfinite(u) && u > 0.0;
  } catch (...) {
    return false;
  }
}

const std::array<FamilyInfo, 7>& family_listing() {
  static const std::array<FamilyInfo, 7> listing{{
      {1, "u = (-eps^2 x^3 + 3 eps x^2 - (9/4) x)^(-2/3)", "eps in {-1,0,1}",
       "base > 0 (x < 0 for every eps)"},
      {2, "u = ((3/2) x^2 / t - (9/4) x)^(-2/3)", "none", "base > 0, t != 0"},
      {3, "u = (x^3 - 3 x^2 tan 2t - (9/4) x)^(-2/3)", "none", "base > 0, 2t away from tan poles"},
      {4, "u = (-x^3 + 3 x^2 tanh 2t - (9/4) x)^(-2/3)", "none", "base > 0"},
      {5, "u = (-x^3 + 3 x^2 coth 2t - (9/4) x)^(-2/3)", "none", "base > 0, t != 0"},
      {6, "sqrt(psi - psi^2) - asin(2 psi - 1)/2 = sign/x + c0, psi = -u^(-1/2)/x", "c0, sign",
       "0 < psi < 1 (x < 0)"},
      {7, "sqrt(psi + psi^2) - ln|2 psi + 1 + 2 sqrt(psi + psi^2)|/2 = sign/x + c0, "
          "psi = -u^(-1/2)/x",
       "c0, sign, psi branch", "psi > 0 (x < 0) or psi < -1 (x > 0)"},
  }};
  return listing;
}

}  // namespace finverify::catalog
