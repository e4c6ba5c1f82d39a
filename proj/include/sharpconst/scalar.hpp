#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace sharpconst {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Largest polynomial degree (and calculus order) accepted by the exact routes.
inline constexpr int kMaxDegree = 64;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegreeCapError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Converts a double to T. For Rational the conversion is exact (doubles are dyadic).
template <class T>
T from_double(double x) {
  if constexpr (is_exact_v<T>) {
    if (!std::isfinite(x)) throw DomainError("cannot represent a non-finite value exactly");
    return Rational(x);
  } else {
    return x;
  }
}

template <class T>
T from_bigint(const BigInt& v) {
  if constexpr (is_exact_v<T>) {
    return Rational(v);
  } else {
    return v.template convert_to<double>();
  }
}

inline void check_degree_cap(int degree, const char* what) {
  if (degree > kMaxDegree) {
    throw DegreeCapError(std::string(what) + ": degree " + std::to_string(degree) +
                         " exceeds the cap of " + std::to_string(kMaxDegree));
  }
}

inline BigInt factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// (n)_r falling factorial n(n-1)...(n-r+1).
inline BigInt falling_factorial(int n, int r) {
  BigInt v = 1;
  for (int i = 0; i < r; ++i) v *= n - i;
  return v;
}

/// "p/q" with no decimal point; the denominator is always written.
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

/// Parses "p/q", an integer, or a plain decimal ("0.375", "-2.5e-3") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return DomainError("malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    try {
      const Rational num = parse_rational(text.substr(0, slash));
      const Rational den = parse_rational(text.substr(slash + 1));
      if (den == 0 || denominator(num) != 1 || denominator(den) != 1) throw fail();
      return num / den;
    } catch (const DomainError&) {
      throw fail();
    }
  }
  std::string digits;
  int exponent = 0;
  bool seen_point = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    if (text[0] == '-') digits.push_back('-');
    ++i;
  }
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      int e = 0;
      auto rest = text.substr(i + 1);
      if (!rest.empty() && rest[0] == '+') rest.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
      if (ec != std::errc() || ptr != rest.data() + rest.size()) throw fail();
      exponent += e;
      break;
    } else {
      throw fail();
    }
  }
  if (!any_digit) throw fail();
  // A leading zero would make the integer parser read octal.
  const bool negative = !digits.empty() && digits[0] == '-';
  std::string body = digits.substr(negative ? 1 : 0);
  body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
  BigInt mantissa(body);
  if (negative) mantissa = -mantissa;
  BigInt scale = boost::multiprecision::pow(BigInt(10), std::abs(exponent));
  return exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
}

namespace detail {

struct TwoTerm {
  double hi;
  double lo;
};

inline TwoTerm two_sum(double a, double b) {
  double s = a + b;
  double z = s - a;
  return {s, (a - (s - z)) + (b - z)};
}

inline TwoTerm split(double a) {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  double c = kSplitter * a;
  double hi = c - (c - a);
  return {hi, a - hi};
}

inline TwoTerm two_product(double a, double b, TwoTerm b_split) {
  double p = a * b;
  TwoTerm as = split(a);
  double err = as.lo * b_split.lo - (((p - as.hi * b_split.hi) - as.lo * b_split.hi) - as.hi * b_split.lo);
  return {p, err};
}

}  // namespace detail

/// Compensated Horner evaluation: as accurate as Horner run in twice the working precision.
inline double compensated_horner(std::span<const double> c, double x) {
  if (c.empty()) return 0.0;
  const detail::TwoTerm xs = detail::split(x);
  double s = c.back();
  double err = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    detail::TwoTerm prod = detail::two_product(s, x, xs);
    detail::TwoTerm sum = detail::two_sum(prod.hi, c[i]);
    err = err * x + (prod.lo + sum.lo);
    s = sum.hi;
  }
  return s + err;
}

inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const Rational& x) { return x.sign(); }

inline double abs_of(double x) { return std::fabs(x); }
inline Rational abs_of(const Rational& x) { return boost::multiprecision::abs(x); }

}  // namespace sharpconst
