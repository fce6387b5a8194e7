#include "finverify/residual.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "finverify/errors.hpp"
#include "finverify/format.hpp"
#include "finverify/taylor.hpp"

namespace finverify::residual {

std::string to_string(Form form) {
  switch (form) {
    case Form::U:
      return "u";
    case Form::V:
      return "v";
    case Form::Tilde:
      return "tilde";
  }
  return "?";
}

Form form_from_string(const std::string& name) {
  if (name == "u") return Form::U;
  if (name == "v") return Form::V;
  if (name == "tilde") return Form::Tilde;
  throw DomainError("unknown residual form '" + name + "'");
}

namespace {

// Cubic base v with its t- and x-derivatives.
Jet cubic_v_jet(const catalog::FamilySpec& spec, Point p, const catalog::Options& opts) {
  using X = Taylor<2>;
  using T = Taylor<1>;
  const X vx = catalog::cubic_base(spec, X(p.t), X::variable(p.x), opts);
  const T vt = catalog::cubic_base(spec, T::variable(p.t), T(p.x), opts);
  return {vx.value(), vt[1], vx.derivative(1), vx.derivative(2)};
}

}  // namespace

Jet v_jet_of_family(const catalog::FamilySpec& spec, Point p, const catalog::Options& opts) {
  if (!spec.is_cubic()) return to_v_jet(jet_of_family(spec, p, opts));
  catalog::eval_v(spec, p, opts);  // domain and pole checks
  return cubic_v_jet(spec, p, opts);
}

Jet jet_of_family(const catalog::FamilySpec& spec, Point p, const catalog::Options& opts) {
  if (p.x == 0.0) throw SingularPoint("x = 0");
  if (spec.is_cubic()) {
    catalog::eval_v(spec, p, opts);
    using X = Taylor<2>;
    using T = Taylor<1>;
    const X ux = pow(catalog::cubic_base(spec, X(p.t), X::variable(p.x), opts), -2.0 / 3.0);
    const T ut = pow(catalog::cubic_base(spec, T::variable(p.t), T(p.x), opts), -2.0 / 3.0);
    return {ux.value(), ut[1], ux.derivative(1), ux.derivative(2)};
  }
  spec.validate();
  const Taylor<2> u = reductions::stationary_u_jet(spec.profile(), p.x);
  return {u.value(), 0.0, u.derivative(1), u.derivative(2)};
}

Jet to_v_jet(const Jet& j) {
  if (!(j.u > 0.0)) throw DomainError("to_v_jet requires u > 0");
  const double u = j.u;
  const double v = std::pow(u, -1.5);
  const double dv = -1.5 * v / u;                  // dv/du
  const double d2v = 3.75 * v / (u * u);           // d2v/du2
  return {v, dv * j.u_t, dv * j.u_x, d2v * j.u_x * j.u_x + dv * j.u_xx};
}

Field family_field(const catalog::FamilySpec& spec, const catalog::Options& opts) {
  Field f;
  f.jet = [spec, opts](Point p) { return jet_of_family(spec, p, opts); };
  f.admissible = [spec, opts](Point p) {
    try {
      return catalog::eval_v(spec, p, opts) >= kBaseZeroExclusion;
    } catch (const Error&) {
      return false;
    }
  };
  return f;
}

namespace {

struct Terms {
  double time;
  double diffusion;
  double reaction;
};

// Residual = time - diffusion - reaction, with every term signed so that the
// equation reads time = diffusion + reaction.
Terms terms(const Jet& j, Point p, Form form) {
  if (p.x == 0.0) throw SingularPoint("x = 0");
  if (!(j.u > 0.0)) throw DomainError("residual requires a positive field value");
  switch (form) {
    case Form::U: {
      const double d = std::pow(j.u, -1.5);
      return {j.u_t, -1.5 * d / j.u * j.u_x * j.u_x + d * j.u_xx, j.u / p.x};
    }
    case Form::V:
      return {j.u_t, j.u * j.u_xx - (2.0 / 3.0) * j.u_x * j.u_x, -1.5 * j.u / p.x};
    case Form::Tilde: {
      const double d = std::pow(j.u, -1.5);
      const double s = p.x > 0.0 ? 1.0 : -1.0;
      return {j.u_t / p.x, s * (-1.5 * d / j.u * j.u_x * j.u_x + d * j.u_xx), j.u};
    }
  }
  return {0.0, 0.0, 0.0};
}

}  // namespace

double residual(const Jet& jet, Point p, Form form) {
  const Terms t = terms(jet, p, form);
  return t.time - t.diffusion - t.reaction;
}

double residual_scale(const Jet& jet, Point p, Form form) {
  const Terms t = terms(jet, p, form);
  return std::max({std::abs(t.time), std::abs(t.diffusion), std::abs(t.reaction), 1e-30});
}

double relative_residual(const Jet& jet, Point p, Form form) {
  const Terms t = terms(jet, p, form);
  const double scale =
      std::max({std::abs(t.time), std::abs(t.diffusion), std::abs(t.reaction), 1e-30});
  return std::abs(t.time - t.diffusion - t.reaction) / scale;
}

std::string ResidualReport::csv_row(const catalog::FamilySpec& spec) const {
  std::ostringstream os;
  os << spec.family_id << ',' << spec.params_tag() << ',' << to_string(form) << ',' << samples
     << ',' << format_double(max_abs) << ',' << format_double(argmax.t) << ','
     << format_double(argmax.x);
  return os.str();
}

namespace {

template <class JetFn, class AdmissibleFn>
ResidualReport scan_impl(JetFn&& jet_fn, AdmissibleFn&& admissible, const Box& box, Form form) {
  ResidualReport report;
  report.form = form;
  for (int i = 0; i < std::max(box.nt, 1); ++i) {
    for (int j = 0; j < std::max(box.nx, 1); ++j) {
      const Point p{box.t_at(i), box.x_at(j)};
      if (p.x == 0.0 || !admissible(p)) {
        ++report.skipped;
        continue;
      }
      const double r = std::abs(relative_residual(jet_fn(p), p, form));
      ++report.samples;
      if (report.samples == 1 || !(r <= report.max_abs)) {  // also propagates NaN
        report.max_abs = r;
        report.argmax = p;
      }
    }
  }
  if (report.samples == 0) throw EmptyGrid("no admissible points in the scan box");
  return report;
}

}  // namespace

ResidualReport scan(const Field& field, const Box& box, Form form) {
  if (form == Form::V) {
    return scan_impl([&](Point p) { return to_v_jet(field.jet(p)); }, field.admissible, box, form);
  }
  return scan_impl(field.jet, field.admissible, box, form);
}

ResidualReport scan(const catalog::FamilySpec& spec, const Box& box, Form form,
                    const catalog::Options& opts) {
  const Field field = family_field(spec, opts);
  if (form == Form::V && spec.is_cubic()) {
    return scan_impl([&](Point p) { return v_jet_of_family(spec, p, opts); }, field.admissible,
                     box, form);
  }
  return scan(field, box, form);
}

}  // namespace finverify::residual
