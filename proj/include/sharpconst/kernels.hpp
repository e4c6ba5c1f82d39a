#pragma once

#include "sharpconst/legendre.hpp"
#include "sharpconst/norms.hpp"
#include "sharpconst/piecewise.hpp"
#include "sharpconst/problem.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sharpconst {

namespace detail {

template <class T>
T power(const T& base, int e) {
  T r = T(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class T>
void check_point(const T& a) {
  if (!(a > T(0) && a < T(1))) throw DomainError("a must lie in (0;1)");
}

}  // namespace detail

/// h_{n,k}(x, a) as a polynomial in x:
///   sum_l (-1)^{n-1-l} C(2n-1-k, n-1-l) x^{n-1-l} a^l sum_{m<=l} C(n-1+m, m) x^m.
/// Binomials are exact integers; the result has degree <= n - 1.
template <class T>
Polynomial<T> h_poly(int n, int k, const T& a) {
  validate_orders(n, k);
  std::vector<T> coeffs(static_cast<std::size_t>(n), T(0));
  T a_pow = T(1);
  for (int l = 0; l < n; ++l) {
    BigInt outer = binomial(2 * n - 1 - k, n - 1 - l);
    if ((n - 1 - l) % 2) outer = -outer;
    for (int m = 0; m <= l; ++m) {
      const T c = from_bigint<T>(outer * binomial(n - 1 + m, m));
      coeffs[static_cast<std::size_t>(n - 1 - l + m)] += c * a_pow;
    }
    a_pow *= a;
  }
  return Polynomial<T>(std::move(coeffs));
}

/// The kernel g_{n,k}(., a) with its knot at a:
///   [0;a]: (-1)^{n-k-1}/(2n-k-1)! (1-a)^{n-k} x^n h(1-x, 1-a)
///   [a;1]: (-1)^{n-1}/(2n-k-1)! a^{n-k} (1-x)^n h(x, a)
template <class T>
PiecewisePolynomial<T> kernel_g(int n, int k, const T& a) {
  validate_orders(n, k);
  detail::check_point(a);
  const T one(1);
  const T b = one - a;
  const T denom = from_bigint<T>(factorial(2 * n - k - 1));
  T left_scale = detail::power(b, n - k) / denom;
  if ((n - k - 1) % 2) left_scale = -left_scale;
  T right_scale = detail::power(a, n - k) / denom;
  if ((n - 1) % 2) right_scale = -right_scale;
  const Polynomial<T> x_n = Polynomial<T>::monomial(n);
  const Polynomial<T> one_minus_x_n = pow(Polynomial<T>::linear(one, -one), static_cast<unsigned>(n));
  Polynomial<T> left = x_n * h_poly(n, k, b).compose_affine(one, -one) * left_scale;
  Polynomial<T> right = one_minus_x_n * h_poly(n, k, a) * right_scale;
  return PiecewisePolynomial<T>::two_piece(a, std::move(left), std::move(right));
}

/// n-th x-derivative of kernel_g; degree <= n - 1 on each piece.
template <class T>
PiecewisePolynomial<T> kernel_g_deriv_n(int n, int k, const T& a) {
  return kernel_g(n, k, a).derivative(n);
}

/// S_{n,k}(., a): (-1)^{n-k-1} (x-a)^{n-k-1}/(n-k-1)! on [0;a), zero on (a;1].
template <class T>
PiecewisePolynomial<T> spline_S(int n, int k, const T& a) {
  validate_orders(n, k);
  detail::check_point(a);
  const int m = n - k - 1;
  Polynomial<T> left = pow(Polynomial<T>::linear(a, T(-1)), static_cast<unsigned>(m)) / from_bigint<T>(factorial(m));
  return PiecewisePolynomial<T>::two_piece(a, std::move(left), Polynomial<T>());
}

/// Coefficients nu_0 .. nu_{n-1} of the spline family.
template <class T>
struct NuVector {
  std::vector<T> values;
};

/// The polynomial sum_l (-1)^{n-l-1} (x-a)^{n-1-l} nu_l / (n-1-l)! shared by both pieces.
template <class T>
Polynomial<T> nu_polynomial(int n, const T& a, const NuVector<T>& nu) {
  if (static_cast<int>(nu.values.size()) != n) {
    throw DomainError("nu must have exactly n = " + std::to_string(n) + " entries, got " +
                      std::to_string(nu.values.size()));
  }
  Polynomial<T> sum;
  const Polynomial<T> shifted = Polynomial<T>::linear(-a, T(1));
  for (int l = 0; l < n; ++l) {
    const int e = n - 1 - l;
    T c = nu.values[static_cast<std::size_t>(l)] / from_bigint<T>(factorial(e));
    if (e % 2) c = -c;
    sum += pow(shifted, static_cast<unsigned>(e)) * c;
  }
  return sum;
}

/// Q^{(n)}_{n,k}(., a; nu): both pieces of degree <= n - 1 with left - right = S_{n,k}.
template <class T>
PiecewisePolynomial<T> build_Q(int n, int k, const T& a, const NuVector<T>& nu) {
  validate_orders(n, k);
  detail::check_point(a);
  const Polynomial<T> common = nu_polynomial(n, a, nu);
  const PiecewisePolynomial<T> s = spline_S(n, k, a);
  return PiecewisePolynomial<T>::two_piece(a, common + s.piece(0), common);
}

inline PiecewisePolynomial<double> build_Q(const ProblemSpec& spec, const NuVector<double>& nu) {
  spec.validate();
  return build_Q(spec.n, spec.k, spec.a, nu);
}

/// nu such that build_Q(nu) = build_Q(0) + shift, for a shift of degree <= n - 1:
/// nu_l = (-1)^i shift^{(i)}(a) with i = n - 1 - l.
template <class T>
NuVector<T> nu_for_shift(int n, const T& a, const Polynomial<T>& shift) {
  if (shift.degree() > n - 1) throw DomainError("nu_for_shift: shift degree exceeds n - 1");
  NuVector<T> nu{std::vector<T>(static_cast<std::size_t>(n), T(0))};
  for (int l = 0; l < n; ++l) {
    const int i = n - 1 - l;
    T v = shift.derivative(i)(a);
    if (i % 2) v = -v;
    nu.values[static_cast<std::size_t>(l)] = v;
  }
  return nu;
}

/// alpha_m = (2m+1) P_m^{(k-n)}(a) for m = n..M: the Legendre coefficients of g^{(n)}
/// (those below n vanish). Doubles use the stable series evaluation.
template <class T>
std::vector<T> legendre_coeffs_of_g(int n, int k, const T& a, int max_index) {
  validate_orders(n, k);
  if (max_index < n) throw DomainError("legendre_coeffs_of_g: need M >= n");
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(max_index - n + 1));
  for (int m = n; m <= max_index; ++m) {
    if constexpr (is_exact_v<T>) {
      out.push_back(T(2 * m + 1) * legendre_antiderivative<T>(m, n - k)(a));
    } else {
      out.push_back((2.0 * m + 1.0) * legendre_antiderivative_value(m, n - k, a));
    }
  }
  return out;
}

/// Raised when h fails int x^j h = 0 for some j < n.
class MomentViolation : public DomainError {
 public:
  MomentViolation(int index, double moment)
      : DomainError("moment condition violated at j = " + std::to_string(index) + " (moment " +
                    std::to_string(moment) + ")"),
        index_(index),
        moment_(moment) {}
  int index() const { return index_; }
  double moment() const { return moment_; }

 private:
  int index_;
  double moment_;
};

/// y with y^{(n)} = h and zero Dirichlet data of order n - 1 at both ends,
/// stored as the full chain y, y', ..., y^{(n)} of piecewise polynomials.
template <class T>
class PiecewiseTestFunction {
 public:
  explicit PiecewiseTestFunction(std::vector<PiecewisePolynomial<T>> chain) : chain_(std::move(chain)) {}

  int order() const { return static_cast<int>(chain_.size()) - 1; }
  const PiecewisePolynomial<T>& derivative(int j) const { return chain_.at(static_cast<std::size_t>(j)); }
  T value(int j, const T& x) const { return derivative(j)(x); }

 private:
  std::vector<PiecewisePolynomial<T>> chain_;
};

template <class T>
std::vector<double> moments(const PiecewisePolynomial<T>& h, int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    if constexpr (is_exact_v<T>) {
      out.push_back(to_double(exact_integral(h * Polynomial<T>::monomial(j))));
    } else {
      out.push_back(integrate_product(h, PiecewisePolynomial<double>(Polynomial<double>::monomial(j))));
    }
  }
  return out;
}

/// Builds y = int_0^x (x-t)^{n-1}/(n-1)! h(t) dt by repeated exact antidifferentiation.
/// The moments int x^j h, j < n, must vanish to tol * max(1, ||h||_1).
template <class T>
PiecewiseTestFunction<T> test_function_from(const PiecewisePolynomial<T>& h, int n, double tol = 1e-12) {
  if (n < 1) throw DomainError("test_function_from: need n >= 1");
  const double scale = std::max(1.0, lq_norm(h, 1.0));
  const auto m = moments(h, n);
  for (int j = 0; j < n; ++j) {
    if (std::fabs(m[static_cast<std::size_t>(j)]) > tol * scale) throw MomentViolation(j, m[static_cast<std::size_t>(j)]);
  }
  return PiecewiseTestFunction<T>(repeated_integrals(h, n));
}

/// Test function for a non-polynomial top derivative h, evaluated by quadrature:
///   y^{(j)}(x) = int_0^x (x-t)^{n-1-j}/(n-1-j)! h(t) dt.
/// breaks must contain 0 and 1 and every point where h is not smooth.
class QuadratureTestFunction {
 public:
  QuadratureTestFunction(std::function<double(double)> h, std::vector<double> breaks, int n,
                         QuadratureOptions opts = {1e-13, 0.0, 1 << 14})
      : h_(std::move(h)), breaks_(std::move(breaks)), n_(n), opts_(opts) {
    std::sort(breaks_.begin(), breaks_.end());
    if (breaks_.empty() || breaks_.front() != 0.0 || breaks_.back() != 1.0) {
      throw DomainError("QuadratureTestFunction: breaks must span [0;1]");
    }
  }

  int order() const { return n_; }

  double value(int j, double x) const {
    if (j < 0 || j > n_) throw DomainError("derivative order out of range");
    if (x < 0.0 || x > 1.0) throw DomainError("x outside [0;1]");
    if (j == n_) return h_(x);
    const int e = n_ - 1 - j;
    const double inv_fact = 1.0 / to_double(Rational(factorial(e)));
    return integrate_on(0.0, x, [&](double t) {
      double w = 1.0;
      for (int i = 0; i < e; ++i) w *= (x - t);
      return w * inv_fact * h_(t);
    });
  }

  /// ||h||_p for finite p.
  double top_norm(double p) const {
    return std::pow(integrate_on(0.0, 1.0, [&](double t) { return std::pow(std::fabs(h_(t)), p); }), 1.0 / p);
  }

  std::vector<double> moments() const {
    std::vector<double> out;
    for (int j = 0; j < n_; ++j) {
      out.push_back(integrate_on(0.0, 1.0, [&](double t) { return std::pow(t, j) * h_(t); }));
    }
    return out;
  }

 private:
  template <class F>
  double integrate_on(double lo, double hi, F&& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
      const double a = std::max(lo, breaks_[i]);
      const double b = std::min(hi, breaks_[i + 1]);
      if (a < b) total += integrate_adaptive(f, a, b, opts_).value;
    }
    return total;
  }

  std::function<double(double)> h_;
  std::vector<double> breaks_;
  int n_;
  QuadratureOptions opts_;
};

}  // namespace sharpconst
