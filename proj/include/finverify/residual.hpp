#pragma once

// Jets of closed-form and implicit fields and the pointwise defect of
//   u-form:      u_t = (u^{-3/2} u_x)_x + u / x
//   v-form:      v_t = v v_xx - (2/3) v_x^2 - (3/2) v / x,   v = u^{-3/2}
//   tilde-form:  x^{-1} u_t = s (u^{-3/2} u_x)_x + u,       s = sign(x)
// The tilde-form is the image of the u-form under t' = t, x' = 1/x,
// u' = x^2 u. For x' > 0 it reads x'^{-1} u'_t = (u'^{-3/2} u'_x)_x + u';
// for x' < 0 the factor (x'^2)^{-3/2} = -x'^{-3} flips the diffusion term.

#include <functional>
#include <iosfwd>
#include <string>

#include "finverify/catalog.hpp"
#include "finverify/types.hpp"

namespace finverify::residual {

enum class Form { U, V, Tilde };

std::string to_string(Form form);

/// Parses "u", "v" or "tilde"; throws DomainError otherwise.
Form form_from_string(const std::string& name);

/// An evaluable field: a jet at each admissible point. Fields are immutable
/// closures and may be shared between threads.
struct Field {
  std::function<Jet(Point)> jet;
  /// Points where false are skipped by scans (invalid or near a base zero).
  std::function<bool(Point)> admissible;

  double value(Point p) const { return jet(p).u; }
};

/// Exact u-jet of a catalog family: truncated Taylor propagation in x (order
/// 2) and in t (order 1) for families 1-5, implicit differentiation of the
/// psi relation for families 6 and 7.
Jet jet_of_family(const catalog::FamilySpec& spec, Point p, const catalog::Options& opts = {});

/// Exact v-jet (v = u^{-3/2}) of families 1-5 straight from the cubic base.
Jet v_jet_of_family(const catalog::FamilySpec& spec, Point p, const catalog::Options& opts = {});

/// v-jet from a u-jet by the chain rule.
Jet to_v_jet(const Jet& u);

/// Scan points whose cubic base is below this are excluded.
inline constexpr double kBaseZeroExclusion = 1e-6;

/// The family as a Field; admissible() also excludes points within
/// kBaseZeroExclusion of a base zero.
Field family_field(const catalog::FamilySpec& spec, const catalog::Options& opts = {});

/// Pointwise defect in the given form. The jet must be a u-jet for the U and
/// Tilde forms and a v-jet for the V form. Throws DomainError when the field
/// value is not positive.
double residual(const Jet& jet, Point p, Form form);

/// Scale used to make residuals relative: the largest of the individual
/// term magnitudes, floored at 1e-30.
double residual_scale(const Jet& jet, Point p, Form form);

double relative_residual(const Jet& jet, Point p, Form form);

struct ResidualReport {
  double max_abs = 0.0;
  Point argmax{};
  long samples = 0;
  long skipped = 0;
  Form form = Form::U;

  static constexpr const char* kCsvHeader = "family_id,params,form,samples,max_abs,argmax_t,argmax_x";
  std::string csv_row(const catalog::FamilySpec& spec) const;
};

/// Max relative residual of a u-field over the admissible nodes of the box.
/// For Form::V the u-jets are converted with to_v_jet. Throws EmptyGrid.
ResidualReport scan(const Field& field, const Box& box, Form form);

/// Family scan; uses v_jet_of_family directly for Form::V on families 1-5.
ResidualReport scan(const catalog::FamilySpec& spec, const Box& box, Form form,
                    const catalog::Options& opts = {});

}  // namespace finverify::residual
