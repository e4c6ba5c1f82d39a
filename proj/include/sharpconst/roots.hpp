#pragma once

#include "sharpconst/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sharpconst {

/// An isolated real root: location lies in [lo; hi] and hi - lo <= eps.
/// multiplicity is exact on the rational backend; the float backend reports
/// 1 for sign-changing roots and 2 for touching (even) roots.
struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double location = 0.0;
  int multiplicity = 1;
  bool sign_change = true;
  bool at_knot = false;
};

struct DegenerateSegment {
  double lo = 0.0;
  double hi = 0.0;
};

struct RootIsolation {
  std::vector<RootBracket> roots;
  std::vector<DegenerateSegment> degenerate;
};

inline constexpr double kDefaultRootEps = 1e-14;

namespace detail {

// Slack below which a computed value is treated as zero: a few ulps of the
// magnitude polynomial, which also absorbs rounding already present in the coefficients.
inline double evaluation_slack(const Polynomial<double>& p, double x) {
  double mag = 0.0;
  const double ax = std::fabs(x);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) mag = mag * ax + std::fabs(p.coeffs()[i]);
  return 2.0 * (p.degree() + 1) * std::numeric_limits<double>::epsilon() * mag + 1e-300;
}

// Sign-change root in (lo; hi) with p(lo), p(hi) of opposite strict sign.
inline double refine_simple_root(const Polynomial<double>& p, const Polynomial<double>& dp, double lo, double hi,
                                 int sign_lo, double eps) {
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > eps * std::max(1.0, std::fabs(x)); ++iter) {
    const double v = p(x);
    const int s = sign_of(v);
    if (s == 0) return x;
    if (s == sign_lo) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = dp(x);
    double next = d != 0.0 ? x - v / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) {
      // Newton stalled in floating point: the root is resolved to the last bit.
      break;
    }
    x = next;
  }
  return x;
}

inline std::vector<RootBracket> float_roots(const Polynomial<double>& p, double lo, double hi, double eps) {
  std::vector<RootBracket> out;
  if (p.degree() <= 0 || !(hi > lo)) return out;
  if (p.degree() == 1) {
    const double r = -p.coeffs()[0] / p.coeffs()[1];
    if (r > lo && r < hi) out.push_back({r, r, r, 1, true, false});
    return out;
  }
  const Polynomial<double> dp = p.derivative();
  std::vector<double> pts{lo};
  for (const auto& c : float_roots(dp, lo, hi, eps)) {
    if (c.location > pts.back() && c.location < hi) pts.push_back(c.location);
  }
  pts.push_back(hi);
  std::vector<int> sgn(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = p(pts[i]);
    sgn[i] = std::fabs(v) <= evaluation_slack(p, pts[i]) ? 0 : sign_of(v);
  }
  // Signs just inside each monotone segment decide what happens at zero-valued critical points.
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (sgn[i] != 0) continue;
    const double left_mid = 0.5 * (pts[i - 1] + pts[i]);
    const double right_mid = 0.5 * (pts[i] + pts[i + 1]);
    const bool change = sign_of(p(left_mid)) != sign_of(p(right_mid));
    out.push_back({pts[i], pts[i], pts[i], change ? 1 : 2, change, false});
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (sgn[i] == 0 || sgn[i + 1] == 0 || sgn[i] == sgn[i + 1]) continue;
    const double r = refine_simple_root(p, dp, pts[i], pts[i + 1], sgn[i], eps);
    const double half = 0.5 * eps * std::max(1.0, std::fabs(r));
    out.push_back({std::max(pts[i], r - half), std::min(pts[i + 1], r + half), r, 1, true, false});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.location < b.location; });
  return out;
}

// Sturm sequence of a square-free polynomial.
inline std::vector<Polynomial<Rational>> sturm_sequence(const Polynomial<Rational>& g) {
  std::vector<Polynomial<Rational>> seq{g, g.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

inline int sign_variations(const std::vector<Polynomial<Rational>>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = p(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Yun's square-free factorization: returns (factor, multiplicity) pairs of positive degree.
inline std::vector<std::pair<Polynomial<Rational>, int>> square_free_factors(const Polynomial<Rational>& p) {
  std::vector<std::pair<Polynomial<Rational>, int>> out;
  if (p.degree() <= 0) return out;
  Polynomial<Rational> a = p / p.coeffs().back();
  Polynomial<Rational> b = a.derivative();
  Polynomial<Rational> c = gcd(a, b);
  Polynomial<Rational> w = divmod(a, c).first;
  Polynomial<Rational> y = divmod(b, c).first;
  Polynomial<Rational> z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Polynomial<Rational> g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

inline void exact_isolate(const Polynomial<Rational>& g, const std::vector<Polynomial<Rational>>& seq, Rational lo,
                          Rational hi, int count, const Rational& eps, int multiplicity,
                          std::vector<RootBracket>& out) {
  if (count <= 0) return;
  if (count == 1) {
    int s_lo = g(lo).sign();
    while (hi - lo > eps) {
      const Rational mid = (lo + hi) / 2;
      const int s = g(mid).sign();
      if (s == 0) {
        const double x = to_double(mid);
        out.push_back({x, x, x, multiplicity, multiplicity % 2 == 1, false});
        return;
      }
      if (s == s_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const Rational mid = (lo + hi) / 2;
    out.push_back({to_double(lo), to_double(hi), to_double(mid), multiplicity, multiplicity % 2 == 1, false});
    return;
  }
  // Split at a point that is not a root; roots are finite so a few tries suffice.
  Rational mid = (lo + hi) / 2;
  for (int tries = 1; g(mid).sign() == 0; ++tries) mid = lo + (hi - lo) * Rational(tries, 2 * tries + 1);
  const int v_lo = sign_variations(seq, lo);
  const int v_mid = sign_variations(seq, mid);
  const int v_hi = sign_variations(seq, hi);
  exact_isolate(g, seq, lo, mid, v_lo - v_mid, eps, multiplicity, out);
  exact_isolate(g, seq, mid, hi, v_mid - v_hi, eps, multiplicity, out);
}

inline std::vector<RootBracket> exact_roots(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi,
                                            const Rational& eps) {
  std::vector<RootBracket> out;
  for (auto [g, mult] : square_free_factors(p)) {
    // Deflate roots sitting exactly on the endpoints: they are outside the open interval.
    for (const Rational& end : {lo, hi}) {
      while (g.degree() > 0 && g(end).sign() == 0) g = divmod(g, Polynomial<Rational>::linear(-end, Rational(1))).first;
    }
    if (g.degree() <= 0) continue;
    const auto seq = sturm_sequence(g);
    const int count = sign_variations(seq, lo) - sign_variations(seq, hi);
    exact_isolate(g, seq, lo, hi, count, eps, mult, out);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.location < b.location; });
  return out;
}

// Sign of p on the side of t given by direction (+1 right, -1 left), from the first nonzero derivative.
template <class T>
int one_sided_sign(const Polynomial<T>& p, const T& t, int direction) {
  Polynomial<T> d = p;
  for (int order = 0; order <= p.degree(); ++order) {
    const int s = sign_of(d(t));
    if (s != 0) return (order % 2 == 1 && direction < 0) ? -s : s;
    d = d.derivative();
  }
  return 0;
}

}  // namespace detail

/// Real roots of a single polynomial in the open interval (lo; hi).
inline std::vector<RootBracket> polynomial_roots(const Polynomial<double>& p, double lo, double hi,
                                                 double eps = kDefaultRootEps) {
  return detail::float_roots(p, lo, hi, eps);
}

inline std::vector<RootBracket> polynomial_roots(const Polynomial<Rational>& p, double lo, double hi,
                                                 double eps = kDefaultRootEps) {
  return detail::exact_roots(p, from_double<Rational>(lo), from_double<Rational>(hi), from_double<Rational>(eps));
}

/// All roots of f in (lo; hi): interior roots of each piece plus knots where
/// f vanishes or changes sign across the jump. Identically-zero pieces are
/// reported as degenerate segments instead of roots.
template <class T>
RootIsolation isolate_roots(const PiecewisePolynomial<T>& f, double lo, double hi, double eps = kDefaultRootEps) {
  if (!(lo < hi)) throw DomainError("isolate_roots: need lo < hi");
  if (lo < 0.0 || hi > 1.0) throw DomainError("isolate_roots: interval outside [0;1]");
  RootIsolation result;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::max(lo, to_double(f.piece_lo(i)));
    const double b = std::min(hi, to_double(f.piece_hi(i)));
    if (!(a < b)) continue;
    if (f.piece(i).is_zero()) {
      result.degenerate.push_back({a, b});
      continue;
    }
    auto roots = polynomial_roots(f.piece(i), a, b, eps);
    result.roots.insert(result.roots.end(), roots.begin(), roots.end());
  }
  for (std::size_t i = 1; i + 1 < f.knots().size(); ++i) {
    const T& t = f.knots()[i];
    const double td = to_double(t);
    if (!(td > lo && td < hi)) continue;
    const Polynomial<T>& left = f.piece(i - 1);
    const Polynomial<T>& right = f.piece(i);
    if (left.is_zero() && right.is_zero()) continue;
    const int sl = detail::one_sided_sign(left, t, -1);
    const int sr = detail::one_sided_sign(right, t, +1);
    const bool touches_zero = sign_of(left(t)) == 0 || sign_of(right(t)) == 0;
    if (sl != sr || touches_zero) {
      const bool change = sl != 0 && sr != 0 && sl != sr;
      result.roots.push_back({td, td, td, 1, change, true});
    }
  }
  std::sort(result.roots.begin(), result.roots.end(),
            [](const auto& a, const auto& b) { return a.location < b.location; });
  return result;
}

}  // namespace sharpconst
