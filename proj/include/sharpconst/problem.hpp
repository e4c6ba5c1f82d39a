#pragma once

#include "sharpconst/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace sharpconst {

/// Largest n accepted: the kernel pieces have degree 2n - 1, which must respect kMaxDegree.
inline constexpr int kMaxOrder = (kMaxDegree + 1) / 2;

/// Conjugate exponent: 1/p + 1/q = 1, with 1 <-> inf.
inline double conjugate_exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("exponent must satisfy p >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

inline void validate_orders(int n, int k) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > kMaxOrder) throw DegreeCapError("n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxOrder));
  if (k < 0 || k > n - 1) throw DomainError("k must satisfy 0 <= k <= n-1");
}

/// One pointwise-bound problem: |y^{(k)}(a)| <= A * ||y^{(n)}||_p on the Dirichlet space of order n.
struct ProblemSpec {
  int n = 1;
  int k = 0;
  double p = 2.0;
  double a = 0.5;

  void validate() const {
    validate_orders(n, k);
    if (std::isnan(p) || p < 1.0) throw DomainError("p must satisfy p >= 1");
    if (!(a > 0.0 && a < 1.0)) throw DomainError("a must lie in (0;1)");
  }

  double q() const { return conjugate_exponent(p); }
};

/// Formats an exponent the way the CLI accepts it ("inf" for infinity).
inline std::string exponent_token(double p) {
  if (std::isinf(p)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

}  // namespace sharpconst
