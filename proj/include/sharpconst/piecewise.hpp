#pragma once

#include "sharpconst/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sharpconst {

/// One-sided limits of a piecewise polynomial at a point; jump = left - right.
template <class T>
struct KnotLimits {
  T left;
  T right;
  T jump;
};

/// Polynomial pieces on a strictly increasing knot vector 0 = t_0 < ... < t_m = 1.
///
/// Pieces are stored in the global variable x (not a local coordinate), so the
/// restriction of piece i to [t_i; t_{i+1}] is exactly the global function there.
template <class T>
class PiecewisePolynomial {
 public:
  using value_type = T;

  PiecewisePolynomial() : PiecewisePolynomial(Polynomial<T>()) {}

  explicit PiecewisePolynomial(Polynomial<T> p) : knots_{T(0), T(1)}, pieces_{std::move(p)} {}

  PiecewisePolynomial(std::vector<T> knots, std::vector<Polynomial<T>> pieces)
      : knots_(std::move(knots)), pieces_(std::move(pieces)) {
    if (knots_.size() < 2) throw DomainError("piecewise polynomial needs at least two knots");
    if (pieces_.size() + 1 != knots_.size()) throw DomainError("piece count must equal knot count - 1");
    if (knots_.front() != T(0) || knots_.back() != T(1)) throw DomainError("knots must start at 0 and end at 1");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      if (!(knots_[i - 1] < knots_[i])) throw DomainError("knots must be strictly increasing");
    }
  }

  /// left on [0;a), right on (a;1].
  static PiecewisePolynomial two_piece(const T& a, Polynomial<T> left, Polynomial<T> right) {
    return PiecewisePolynomial({T(0), a, T(1)}, {std::move(left), std::move(right)});
  }

  const std::vector<T>& knots() const { return knots_; }
  const std::vector<Polynomial<T>>& pieces() const { return pieces_; }
  const Polynomial<T>& piece(std::size_t i) const { return pieces_.at(i); }
  std::size_t size() const { return pieces_.size(); }
  T piece_lo(std::size_t i) const { return knots_[i]; }
  T piece_hi(std::size_t i) const { return knots_[i + 1]; }

  int max_degree() const {
    int d = 0;
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
  }

  bool is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const auto& p) { return p.is_zero(); });
  }

  /// Index of the piece whose half-open interval [t_i; t_{i+1}) holds x; x = 1 maps to the last piece.
  std::size_t piece_index(const T& x) const {
    check_domain(x);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
    if (idx == 0) return 0;
    return std::min(idx - 1, pieces_.size() - 1);
  }

  /// Right-continuous value (left limit at x = 1).
  T operator()(const T& x) const { return pieces_[piece_index(x)](x); }

  KnotLimits<T> limits(const T& x) const {
    const std::size_t i = piece_index(x);
    T right = pieces_[i](x);
    T left = right;
    if (i > 0 && knots_[i] == x) left = pieces_[i - 1](x);
    if (x == T(1)) right = left;
    T jump = left - right;
    return {std::move(left), std::move(right), std::move(jump)};
  }

  /// Piecewise derivative; point masses at jumps are dropped.
  PiecewisePolynomial derivative(int order = 1) const {
    std::vector<Polynomial<T>> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(p.derivative(order));
    return {knots_, std::move(out)};
  }

  /// Continuous F with F(0) = 0 and F' = f on every piece.
  PiecewisePolynomial integral_from_zero() const {
    std::vector<Polynomial<T>> out;
    out.reserve(pieces_.size());
    T carry = T(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      Polynomial<T> anti = pieces_[i].antiderivative();
      const T offset = carry - anti(knots_[i]);
      anti += Polynomial<T>::constant(offset);
      carry = anti(knots_[i + 1]);
      out.push_back(std::move(anti));
    }
    return {knots_, std::move(out)};
  }

  /// Same function expressed on the union of its knots and extra.
  PiecewisePolynomial refine(const std::vector<T>& extra) const {
    std::vector<T> merged = knots_;
    for (const T& t : extra) {
      check_domain(t);
      merged.push_back(t);
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    std::vector<Polynomial<T>> out;
    out.reserve(merged.size() - 1);
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) out.push_back(pieces_[piece_index(merged[i])]);
    return {std::move(merged), std::move(out)};
  }

  template <class U>
  PiecewisePolynomial<U> cast() const {
    std::vector<U> k;
    k.reserve(knots_.size());
    for (const T& t : knots_) {
      if constexpr (std::is_same_v<U, double>) {
        k.push_back(to_double(t));
      } else {
        k.push_back(from_double<U>(t));
      }
    }
    std::vector<Polynomial<U>> p;
    p.reserve(pieces_.size());
    for (const auto& q : pieces_) p.push_back(q.template cast<U>());
    return {std::move(k), std::move(p)};
  }

  PiecewisePolynomial operator-() const {
    std::vector<Polynomial<T>> out;
    for (const auto& p : pieces_) out.push_back(-p);
    return {knots_, std::move(out)};
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial<T>& x, const Polynomial<T>& y) { return x + y; });
  }
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial<T>& x, const Polynomial<T>& y) { return x - y; });
  }
  friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial<T>& x, const Polynomial<T>& y) { return x * y; });
  }
  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const Polynomial<T>& p) {
    return a.map([&](const Polynomial<T>& x) { return x + p; });
  }
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const Polynomial<T>& p) {
    return a.map([&](const Polynomial<T>& x) { return x - p; });
  }
  friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const Polynomial<T>& p) {
    return a.map([&](const Polynomial<T>& x) { return x * p; });
  }
  friend PiecewisePolynomial operator*(const T& s, const PiecewisePolynomial& a) {
    return a.map([&](const Polynomial<T>& x) { return x * s; });
  }
  friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const T& s) { return s * a; }

  friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return a.knots_ == b.knots_ && a.pieces_ == b.pieces_;
  }

  template <class F>
  PiecewisePolynomial map(F&& f) const {
    std::vector<Polynomial<T>> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(f(p));
    return {knots_, std::move(out)};
  }

  friend std::ostream& operator<<(std::ostream& os, const PiecewisePolynomial& f) {
    for (std::size_t i = 0; i < f.pieces_.size(); ++i) {
      os << '[' << f.knots_[i] << ", " << f.knots_[i + 1] << "]: " << f.pieces_[i] << '\n';
    }
    return os;
  }

 private:
  void check_domain(const T& x) const {
    if (x < T(0) || x > T(1)) throw DomainError("piecewise polynomial evaluated outside [0;1]");
  }

  template <class Op>
  static PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b, Op op) {
    if (a.knots_ == b.knots_) {
      std::vector<Polynomial<T>> out;
      out.reserve(a.pieces_.size());
      for (std::size_t i = 0; i < a.pieces_.size(); ++i) out.push_back(op(a.pieces_[i], b.pieces_[i]));
      return {a.knots_, std::move(out)};
    }
    const PiecewisePolynomial ra = a.refine(b.knots_);
    const PiecewisePolynomial rb = b.refine(a.knots_);
    return combine(ra, rb, op);
  }

  std::vector<T> knots_;
  std::vector<Polynomial<T>> pieces_;
};

/// Exact integral of f over [lo; hi], split at interior knots.
template <class T>
T exact_integral(const PiecewisePolynomial<T>& f, const T& lo, const T& hi) {
  if (lo < T(0) || hi > T(1) || hi < lo) throw DomainError("exact_integral: need 0 <= lo <= hi <= 1");
  T total = T(0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const T a = std::max(lo, f.piece_lo(i));
    const T b = std::min(hi, f.piece_hi(i));
    if (!(a < b)) continue;
    const Polynomial<T> anti = f.piece(i).antiderivative();
    total += anti(b) - anti(a);
  }
  return total;
}

template <class T>
T exact_integral(const PiecewisePolynomial<T>& f) {
  return exact_integral(f, T(0), T(1));
}

}  // namespace sharpconst
