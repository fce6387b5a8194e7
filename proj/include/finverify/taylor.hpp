#pragma once

// Truncated univariate Taylor arithmetic.
//
// A Taylor<N> holds the normalized coefficients c[k] = f^(k)(s0) / k! of a
// quantity f(s) expanded about one point, truncated after order N. Arithmetic
// propagates the coefficients exactly (up to roundoff), which gives exact
// derivatives of closed-form expressions without symbolic differentiation.

#include <array>
#include <cmath>
#include <cstddef>

namespace finverify {

template <std::size_t N>
class Taylor {
 public:
  static constexpr std::size_t order = N;

  constexpr Taylor() = default;
  constexpr Taylor(double value) { c_[0] = value; }  // NOLINT: implicit by design of the algebra

  /// The independent variable s expanded about s0: s0 + 1*(s - s0).
  static constexpr Taylor variable(double s0) {
    Taylor r(s0);
    if constexpr (N >= 1) r.c_[1] = 1.0;
    return r;
  }

  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }

  constexpr double value() const { return c_[0]; }

  /// k-th derivative with respect to the expansion variable.
  constexpr double derivative(std::size_t k) const {
    double f = 1.0;
    for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
    return c_[k] * f;
  }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Taylor& operator*=(const Taylor& o) { return *this = *this * o; }
  Taylor& operator/=(const Taylor& o) { return *this = *this / o; }

  friend Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
  friend Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }
  friend Taylor operator-(Taylor a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Taylor operator/(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (std::size_t k = 0; k <= N; ++k) {
      double s = a.c_[k];
      for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }

 private:
  std::array<double, N + 1> c_{};
};

/// Composes an outer function g with the series x, given the ordinary
/// derivatives g(x0), g'(x0), ..., g^(N)(x0) at x0 = x.value().
template <std::size_t N>
Taylor<N> compose(const Taylor<N>& x, const std::array<double, N + 1>& g_derivs) {
  Taylor<N> delta = x;
  delta[0] = 0.0;
  Taylor<N> result(g_derivs[0]);
  Taylor<N> power(1.0);
  double factorial = 1.0;
  for (std::size_t k = 1; k <= N; ++k) {
    power = power * delta;
    factorial *= static_cast<double>(k);
    Taylor<N> term = power;
    for (std::size_t i = 0; i <= N; ++i) term[i] *= g_derivs[k] / factorial;
    result += term;
  }
  return result;
}

template <std::size_t N>
Taylor<N> pow(const Taylor<N>& x, double a) {
  std::array<double, N + 1> d{};
  double coeff = 1.0;
  for (std::size_t k = 0; k <= N; ++k) {
    d[k] = coeff * std::pow(x.value(), a - static_cast<double>(k));
    coeff *= a - static_cast<double>(k);
  }
  return compose(x, d);
}

template <std::size_t N>
Taylor<N> sqrt(const Taylor<N>& x) {
  return pow(x, 0.5);
}

template <std::size_t N>
Taylor<N> log(const Taylor<N>& x) {
  std::array<double, N + 1> d{};
  d[0] = std::log(x.value());
  double coeff = 1.0;
  for (std::size_t k = 1; k <= N; ++k) {
    d[k] = coeff * std::pow(x.value(), -static_cast<double>(k));
    coeff *= -static_cast<double>(k);
  }
  return compose(x, d);
}

namespace detail {

// Derivatives of f where f' = p + q f^2 (tan: p=q=1, tanh/coth: p=1, q=-1),
// generated by differentiating the polynomial in f repeatedly.
template <std::size_t N>
std::array<double, N + 1> riccati_derivs(double f, double p, double q) {
  // poly holds coefficients of a polynomial in f, starting from f itself.
  std::array<double, N + 3> poly{};
  poly[1] = 1.0;
  std::array<double, N + 1> d{};
  for (std::size_t k = 0; k <= N; ++k) {
    double v = 0.0;
    double fp = 1.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      v += poly[i] * fp;
      fp *= f;
    }
    d[k] = v;
    std::array<double, N + 3> next{};
    for (std::size_t i = 1; i < poly.size(); ++i) {
      const double c = poly[i] * static_cast<double>(i);
      if (c == 0.0) continue;
      next[i - 1] += c * p;
      if (i + 1 < next.size()) next[i + 1] += c * q;
    }
    poly = next;
  }
  return d;
}

}  // namespace detail

template <std::size_t N>
Taylor<N> tan(const Taylor<N>& x) {
  return compose(x, detail::riccati_derivs<N>(std::tan(x.value()), 1.0, 1.0));
}

template <std::size_t N>
Taylor<N> tanh(const Taylor<N>& x) {
  return compose(x, detail::riccati_derivs<N>(std::tanh(x.value()), 1.0, -1.0));
}

/// Hyperbolic cotangent; coth' = 1 - coth^2 like tanh.
template <std::size_t N>
Taylor<N> coth(const Taylor<N>& x) {
  return compose(x, detail::riccati_derivs<N>(1.0 / std::tanh(x.value()), 1.0, -1.0));
}

inline double coth(double x) { return 1.0 / std::tanh(x); }

template <std::size_t N>
Taylor<N> abs(const Taylor<N>& x) {
  return x.value() < 0.0 ? -x : x;
}

inline double value_of(double x) { return x; }
template <std::size_t N>
double value_of(const Taylor<N>& x) {
  return x.value();
}

}  // namespace finverify
