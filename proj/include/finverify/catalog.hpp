#pragma once

// Closed-form solutions of u_t = (u^{-3/2} u_x)_x + u / x.
//
// Families 1-5 are cubic in x after the substitution v = u^{-3/2}:
//   1) v = -eps^2 x^3 + 3 eps x^2 - (9/4) x,   eps in {-1, 0, 1}
//   2) v = (3/2) x^2 / t - (9/4) x
//   3) v =  x^3 - 3 x^2 tan 2t  - (9/4) x
//   4) v = -x^3 + 3 x^2 tanh 2t - (9/4) x
//   5) v = -x^3 + 3 x^2 coth 2t - (9/4) x
// and u = v^{-2/3} wherever v > 0. Families 6 and 7 are stationary and given
// implicitly through psi = -u^{-1/2} / x (see reductions::StationaryProfile).

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "finverify/errors.hpp"
#include "finverify/reductions.hpp"
#include "finverify/taylor.hpp"
#include "finverify/types.hpp"

namespace finverify::catalog {

struct FamilySpec {
  int family_id = 1;
  double epsilon = 0.0;  // family 1
  double c0 = 0.0;       // families 6, 7
  int branch_sign = 1;   // families 6, 7
  Interval psi_interval{0.0, 1.0};

  static FamilySpec family1(double epsilon);
  /// Families 2..5 have no free parameters.
  static FamilySpec cubic(int family_id);
  static FamilySpec family6(double c0, int sign, Interval psi = {0.0, 1.0});
  /// Default interval is the positive branch psi > 0.
  static FamilySpec family7(double c0, int sign,
                            Interval psi = {0.0, std::numeric_limits<double>::infinity()});

  bool is_cubic() const { return family_id >= 1 && family_id <= 5; }
  bool is_stationary() const { return family_id == 1 || family_id == 6 || family_id == 7; }

  /// Throws DomainError when the parameter invariants are violated.
  void validate() const;

  /// Implicit descriptor for families 6 (c1 = -1) and 7 (c1 = 1).
  reductions::StationaryProfile profile() const;

  /// Short parameter tag such as "eps=1" or "c0=0;sign=1".
  std::string params_tag() const;
};

struct Options {
  /// Distance in the argument 2t below which a tan/coth pole is reported.
  double pole_threshold = 1e-8;
};

namespace detail {

inline void check_tan_pole(double t, double threshold) {
  // tan(2t) has poles at 2t = pi/2 + k pi.
  const double arg = 2.0 * t - std::numbers::pi / 2.0;
  const double dist = std::abs(arg - std::numbers::pi * std::round(arg / std::numbers::pi));
  if (dist < threshold) throw SingularPoint("tan(2t) pole");
}

inline void check_coth_pole(double t, double threshold) {
  if (std::abs(2.0 * t) < threshold) throw SingularPoint("coth(2t) pole at t = 0");
}

}  // namespace detail

/// The cubic base of families 1-5 (equal to v), generic over double and
/// Taylor series in t or x. Pole checks use the value part of t.
template <class T>
T cubic_base(const FamilySpec& spec, const T& t, const T& x, const Options& opts = {}) {
  using std::tan;
  using std::tanh;
  const double t0 = value_of(t);
  const T x2 = x * x;
  const T x3 = x2 * x;
  const T lin = T(9.0 / 4.0) * x;
  switch (spec.family_id) {
    case 1: {
      const double e = spec.epsilon;
      return T(-e * e) * x3 + T(3.0 * e) * x2 - lin;
    }
    case 2:
      if (t0 == 0.0) throw SingularPoint("family 2 is singular at t = 0");
      return T(1.5) * x2 / t - lin;
    case 3:
      detail::check_tan_pole(t0, opts.pole_threshold);
      return x3 - T(3.0) * x2 * tan(T(2.0) * t) - lin;
    case 4:
      return -x3 + T(3.0) * x2 * tanh(T(2.0) * t) - lin;
    case 5:
      detail::check_coth_pole(t0, opts.pole_threshold);
      return -x3 + T(3.0) * x2 * coth(T(2.0) * t) - lin;
    default:
      throw DomainError("cubic_base: family " + std::to_string(spec.family_id) + " is not cubic");
  }
}

/// v = u^{-3/2}. Throws DomainError when v <= 0 and SingularPoint at x = 0 or
/// at a pole.
double eval_v(const FamilySpec& spec, Point p, const Options& opts = {});

/// u = v^{-2/3} > 0.
double eval_u(const FamilySpec& spec, Point p, const Options& opts = {});

/// True iff eval_u succeeds. Never throws.
bool validity(const FamilySpec& spec, Point p, const Options& opts = {}) noexcept;

/// Human-readable closed form and validity note for listings.
struct FamilyInfo {
  int family_id;
  std::string formula;
  std::string parameters;
  std::string validity;
};

const std::array<FamilyInfo, 7>& family_listing();

}  // namespace finverify::catalog
