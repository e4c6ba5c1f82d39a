#pragma once

#include "sharpconst/polynomial.hpp"

#include <map>
#include <vector>

namespace sharpconst {

/// Antiderivative of order j of the shifted Legendre polynomial on [0;1],
///   P_m^{(-j)}(x) = ((x^2 - x)^m)^{(m-j)} / m!,
/// built from the binomial expansion of x^m (x-1)^m in exact integers.
/// For 1 <= j <= m the result vanishes at both endpoints.
template <class T = Rational>
Polynomial<T> legendre_antiderivative(int m, int j) {
  if (m < 0) throw DomainError("legendre: negative index");
  if (j < 0 || j > m) throw DomainError("legendre_antiderivative: need 0 <= j <= m");
  check_degree_cap(m, "legendre");
  const int order = m - j;
  const BigInt m_fact = factorial(m);
  std::vector<Rational> coeffs(static_cast<std::size_t>(m + j) + 1, Rational(0));
  for (int i = 0; i <= m; ++i) {
    const int power = m + i;
    if (power < order) continue;
    BigInt c = binomial(m, i) * falling_factorial(power, order);
    if ((m - i) % 2) c = -c;
    coeffs[static_cast<std::size_t>(power - order)] = Rational(c, m_fact);
  }
  Polynomial<Rational> exact(std::move(coeffs));
  if constexpr (is_exact_v<T>) {
    return exact;
  } else {
    return exact.template cast<T>();
  }
}

/// Shifted Legendre polynomial P_m on [0;1]; P_m(1) = 1 and ||P_m||_2^2 = 1/(2m+1).
template <class T = Rational>
Polynomial<T> legendre(int m) {
  return legendre_antiderivative<T>(m, 0);
}

/// P_0(x), ..., P_d(x) by the three-term recurrence in s = 2x - 1.
inline std::vector<double> legendre_values(int degree, double x) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1);
  const double s = 2.0 * x - 1.0;
  v[0] = 1.0;
  if (degree >= 1) v[1] = s;
  for (int l = 1; l < degree; ++l) {
    v[static_cast<std::size_t>(l + 1)] =
        ((2.0 * l + 1.0) * s * v[static_cast<std::size_t>(l)] - l * v[static_cast<std::size_t>(l - 1)]) / (l + 1.0);
  }
  return v;
}

inline double legendre_value(int m, double x) { return legendre_values(m, x).back(); }

/// Coefficients c_l of P_m^{(-j)} = sum_l c_l P_l, obtained by applying
///   int_0^x P_l = (P_{l+1} - P_{l-1}) / (2(2l+1))   (l >= 1)
/// j times. Only indices m-j..m+j (step 2) are nonzero.
inline std::map<int, double> legendre_antiderivative_series(int m, int j) {
  if (j < 0 || j > m) throw DomainError("legendre_antiderivative_series: need 0 <= j <= m");
  std::map<int, double> c{{m, 1.0}};
  for (int step = 0; step < j; ++step) {
    std::map<int, double> next;
    for (const auto& [l, v] : c) {
      const double s = v / (2.0 * (2.0 * l + 1.0));
      next[l + 1] += s;
      next[l - 1] -= s;
    }
    c = std::move(next);
  }
  return c;
}

/// Stable floating evaluation of P_m^{(-j)}(x) for large m (no monomial coefficients).
inline double legendre_antiderivative_value(int m, int j, double x) {
  const auto series = legendre_antiderivative_series(m, j);
  const auto values = legendre_values(m + j, x);
  double sum = 0.0;
  for (const auto& [l, c] : series) sum += c * values[static_cast<std::size_t>(l)];
  return sum;
}

}  // namespace sharpconst
