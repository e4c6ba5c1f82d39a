#pragma once

#include "sharpconst/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace sharpconst {

/// Dense polynomial in x with ascending coefficients.
///
/// The coefficient vector is kept trimmed: the trailing coefficient is nonzero
/// unless the polynomial is identically zero, which is stored as {0}. With
/// T = Rational every operation is exact.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() : coeffs_{T(0)} {}
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<T> coeffs) : Polynomial(std::vector<T>(coeffs)) {}

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

  static Polynomial monomial(int degree, T c = T(1)) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }

  /// c0 + c1 x
  static Polynomial linear(T c0, T c1) { return Polynomial(std::vector<T>{std::move(c0), std::move(c1)}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == T(0); }
  std::span<const T> coeffs() const { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_.at(i); }
  T coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }

  /// Value at x; no domain restriction. Doubles use compensated Horner.
  T operator()(const T& x) const {
    if constexpr (is_exact_v<T>) {
      T s = coeffs_.back();
      for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        s *= x;
        s += coeffs_[i];
      }
      return s;
    } else {
      return compensated_horner(coeffs_, x);
    }
  }

  /// Plain Horner value; cheaper and less accurate than operator() for doubles.
  T fast_value(const T& x) const {
    T s = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) s = s * x + coeffs_[i];
    return s;
  }

  Polynomial derivative(int order = 1) const {
    if (order < 0) return antiderivative(-order);
    if (order == 0) return *this;
    if (order > degree()) return Polynomial();
    std::vector<T> out(coeffs_.size() - static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const int src = static_cast<int>(i) + order;
      out[i] = coeffs_[static_cast<std::size_t>(src)] * from_bigint<T>(falling_factorial(src, order));
    }
    return Polynomial(std::move(out));
  }

  /// order-fold antiderivative with every integration constant zero.
  Polynomial antiderivative(int order = 1) const {
    if (order < 0) return derivative(-order);
    if (order == 0 || is_zero()) return *this;
    std::vector<T> out(coeffs_.size() + static_cast<std::size_t>(order), T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int dst = static_cast<int>(i) + order;
      out[static_cast<std::size_t>(dst)] = coeffs_[i] / from_bigint<T>(falling_factorial(dst, order));
    }
    return Polynomial(std::move(out));
  }

  /// p(shift + scale * x)
  Polynomial compose_affine(const T& shift, const T& scale) const {
    const Polynomial inner = linear(shift, scale);
    Polynomial result = constant(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
      result *= inner;
      result += constant(coeffs_[i]);
    }
    return result;
  }

  template <class U>
  Polynomial<U> cast() const {
    std::vector<U> out;
    out.reserve(coeffs_.size());
    for (const T& c : coeffs_) {
      if constexpr (std::is_same_v<U, double>) {
        out.push_back(to_double(c));
      } else if constexpr (std::is_same_v<T, double>) {
        out.push_back(from_double<U>(c));
      } else {
        out.push_back(U(c));
      }
    }
    return Polynomial<U>(std::move(out));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (T& c : r.coeffs_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), T(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const Polynomial& rhs) {
    if (is_zero() || rhs.is_zero()) {
      *this = Polynomial();
      return *this;
    }
    std::vector<T> out(coeffs_.size() + rhs.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == T(0)) continue;
      for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (T& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  Polynomial& operator/=(const T& s) {
    if (s == T(0)) throw DomainError("polynomial division by zero scalar");
    for (T& c : coeffs_) c /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
  friend Polynomial operator*(Polynomial lhs, const T& s) { return lhs *= s; }
  friend Polynomial operator*(const T& s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator/(Polynomial lhs, const T& s) { return lhs /= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    os << '[';
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
      if (i) os << ", ";
      if constexpr (is_exact_v<T>) {
        os << to_string(p.coeffs_[i]);
      } else {
        os << p.coeffs_[i];
      }
    }
    return os << ']';
  }

 private:
  void normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == T(0)) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(T(0));
  }

  std::vector<T> coeffs_;
};

template <class T>
Polynomial<T> pow(const Polynomial<T>& base, unsigned exponent) {
  Polynomial<T> result = Polynomial<T>::constant(T(1));
  Polynomial<T> b = base;
  while (exponent) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent) b *= b;
  }
  return result;
}

/// Value of p at x with x restricted to [0;1].
template <class T>
T poly_eval(const Polynomial<T>& p, const T& x) {
  if (x < T(0) || x > T(1)) throw DomainError("poly_eval: x outside [0;1]");
  return p(x);
}

/// order > 0: derivative; order < 0: antiderivative with zero constants; order = 0: identity.
template <class T>
Polynomial<T> poly_calculus(const Polynomial<T>& p, int order) {
  if (order > kMaxDegree || order < -kMaxDegree) {
    throw DegreeCapError("poly_calculus: |order| exceeds " + std::to_string(kMaxDegree));
  }
  return p.derivative(order);
}

/// Quotient and remainder of polynomial long division (exact for Rational).
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<T> rem(num.coeffs().begin(), num.coeffs().end());
  const int dd = den.degree();
  const T lead = den.coeffs().back();
  if (num.degree() < dd) return {Polynomial<T>(), num};
  std::vector<T> quot(static_cast<std::size_t>(num.degree() - dd) + 1, T(0));
  for (int i = num.degree() - dd; i >= 0; --i) {
    const T factor = rem[static_cast<std::size_t>(i + dd)] / lead;
    quot[static_cast<std::size_t>(i)] = factor;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(i + j)] -= factor * den.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max(dd, 1)));
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

/// Monic greatest common divisor over the rationals.
inline Polynomial<Rational> gcd(Polynomial<Rational> a, Polynomial<Rational> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  const Rational lead = a.coeffs().back();
  return a / lead;
}

}  // namespace sharpconst
