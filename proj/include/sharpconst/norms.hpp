#pragma once

#include "sharpconst/piecewise.hpp"
#include "sharpconst/quadrature.hpp"
#include "sharpconst/roots.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sharpconst {

/// Maximal subinterval on which one piece of f keeps a constant sign.
struct SignSegment {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t piece = 0;
  int sign = 0;
};

/// Splits [lo; hi] at knots and at every isolated root so |f| is smooth on each part.
inline std::vector<SignSegment> sign_segments(const PiecewisePolynomial<double>& f, double lo = 0.0, double hi = 1.0) {
  std::vector<SignSegment> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::max(lo, f.piece_lo(i));
    const double b = std::min(hi, f.piece_hi(i));
    if (!(a < b)) continue;
    const Polynomial<double>& p = f.piece(i);
    if (p.is_zero()) {
      out.push_back({a, b, i, 0});
      continue;
    }
    std::vector<double> cuts{a};
    for (const auto& r : polynomial_roots(p, a, b)) {
      if (r.location > cuts.back() && r.location < b) cuts.push_back(r.location);
    }
    cuts.push_back(b);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      const double mid = 0.5 * (cuts[j] + cuts[j + 1]);
      out.push_back({cuts[j], cuts[j + 1], i, sign_of(p(mid))});
    }
  }
  return out;
}

/// sup |f| over [0;1]: endpoints, one-sided knot limits and interior critical points of every piece.
inline double sup_norm(const PiecewisePolynomial<double>& f) {
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Polynomial<double>& p = f.piece(i);
    const double a = f.piece_lo(i);
    const double b = f.piece_hi(i);
    best = std::max({best, std::fabs(p(a)), std::fabs(p(b))});
    for (const auto& c : polynomial_roots(p.derivative(), a, b)) best = std::max(best, std::fabs(p(c.location)));
  }
  return best;
}

/// Points where |f| attains its sup (up to rel_tol), with the piece each comes from.
struct ExtremalPoint {
  double x = 0.0;
  std::size_t piece = 0;
  double value = 0.0;
};

inline std::vector<ExtremalPoint> local_extrema(const PiecewisePolynomial<double>& f) {
  std::vector<ExtremalPoint> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Polynomial<double>& p = f.piece(i);
    const double a = f.piece_lo(i);
    const double b = f.piece_hi(i);
    out.push_back({a, i, p(a)});
    for (const auto& c : polynomial_roots(p.derivative(), a, b)) out.push_back({c.location, i, p(c.location)});
    out.push_back({b, i, p(b)});
  }
  return out;
}

/// Integral of |f|^q over [0;1] for finite q >= 1, per sign segment with adaptive Gauss.
inline double lq_norm_power(const PiecewisePolynomial<double>& f, double q, const QuadratureOptions& opts = {}) {
  if (!(q >= 1.0) || std::isinf(q)) throw DomainError("lq_norm_power: need finite q >= 1");
  const bool integral_q = q == std::floor(q) && q <= 64.0;
  const int iq = static_cast<int>(q);
  double total = 0.0;
  for (const auto& seg : sign_segments(f)) {
    if (seg.sign == 0) continue;
    const Polynomial<double>& p = f.piece(seg.piece);
    auto integrand = [&](double x) {
      const double v = std::fabs(p(x));
      if (integral_q) {
        double r = 1.0;
        for (int i = 0; i < iq; ++i) r *= v;
        return r;
      }
      return std::pow(v, q);
    };
    total += integrate_adaptive(integrand, seg.lo, seg.hi, opts).value;
  }
  return total;
}

/// L_q[0;1] norm for q in [1;inf]. Exact route for even integer q on the rational backend.
template <class T>
double lq_norm(const PiecewisePolynomial<T>& f, double q) {
  if (std::isnan(q) || q < 1.0) throw DomainError("lq_norm: need q >= 1");
  if constexpr (is_exact_v<T>) {
    if (std::isfinite(q) && q == std::floor(q) && static_cast<long>(q) % 2 == 0 && q <= kMaxDegree) {
      const unsigned iq = static_cast<unsigned>(q);
      const PiecewisePolynomial<T> power = f.map([&](const Polynomial<T>& p) { return pow(p, iq); });
      return std::pow(to_double(exact_integral(power)), 1.0 / q);
    }
    return lq_norm(f.template cast<double>(), q);
  } else {
    if (std::isinf(q)) return sup_norm(f);
    return std::pow(lq_norm_power(f, q), 1.0 / q);
  }
}

/// int_0^1 f g computed by Gauss rules on the merged pieces, evaluating each factor separately.
inline double integrate_product(const PiecewisePolynomial<double>& f, const PiecewisePolynomial<double>& g) {
  const PiecewisePolynomial<double> rf = f.refine(g.knots());
  const PiecewisePolynomial<double> rg = g.refine(f.knots());
  double total = 0.0;
  for (std::size_t i = 0; i < rf.size(); ++i) {
    const Polynomial<double>& p = rf.piece(i);
    const Polynomial<double>& r = rg.piece(i);
    const int degree = p.degree() + r.degree();
    const int parts = degree / 63 + 1;
    const double a = rf.piece_lo(i);
    const double h = (rf.piece_hi(i) - a) / parts;
    for (int j = 0; j < parts; ++j) {
      total += gauss32_integral([&](double x) { return p(x) * r(x); }, a + j * h, a + (j + 1) * h);
    }
  }
  return total;
}

/// Continuous n-fold integration: the function y with y^{(n)} = h and y^{(j)}(0) = 0 for j < n.
template <class T>
std::vector<PiecewisePolynomial<T>> repeated_integrals(const PiecewisePolynomial<T>& h, int n) {
  std::vector<PiecewisePolynomial<T>> derivs(static_cast<std::size_t>(n) + 1);
  derivs[static_cast<std::size_t>(n)] = h;
  for (int j = n - 1; j >= 0; --j) derivs[static_cast<std::size_t>(j)] = derivs[static_cast<std::size_t>(j + 1)].integral_from_zero();
  return derivs;
}

}  // namespace sharpconst
