#pragma once

#include "sharpconst/legendre.hpp"
#include "sharpconst/norms.hpp"
#include "sharpconst/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharpconst {

struct ApproxDiagnostics {
  /// int x^j |r|^{q-1} sgn r, j = 0..degree (1 < q < inf).
  std::vector<double> orthogonality_defects;
  /// Sign changes of the residual, knots included (q = 1).
  std::vector<double> sign_changes;
  /// Points where |r| attains the sup (q = inf).
  std::vector<double> active_points;
  /// Continuous value minus the discrete optimum of the last grid (q in {1, inf}).
  double discretization_gap = 0.0;
};

struct ApproxSolution {
  Polynomial<double> correction;
  /// The correction in the shifted Legendre basis P_0..P_degree.
  std::vector<double> legendre_coeffs;
  double value = 0.0;
  PiecewisePolynomial<double> residual;
  ApproxDiagnostics diagnostics;
  int iterations = 0;
  std::string method;
};

/// Solver caps and tolerances. SHARPCONST_MAX_ITERS, when set to a positive
/// integer, replaces every iteration cap.
struct ApproxOptions {
  int max_iterations = 500;
  int max_pivots = 50000;
  int max_refinements = 40;
  int grid_per_piece = 2048;
  double smooth_tol = 1e-9;
  double l1_tol = 1e-8;
  double linf_tol = 1e-10;

  static ApproxOptions defaults() {
    ApproxOptions o;
    if (const char* env = std::getenv("SHARPCONST_MAX_ITERS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0 && v <= std::numeric_limits<int>::max()) {
        o.max_iterations = o.max_pivots = o.max_refinements = static_cast<int>(v);
      }
    }
    return o;
  }
};

/// Raised when a solver hits its cap; best() is the best iterate found.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, ApproxSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const ApproxSolution& best() const { return best_; }

 private:
  ApproxSolution best_;
};

/// sum_j c_j P_j as a monomial-basis polynomial.
inline Polynomial<double> legendre_combination(std::span<const double> c) {
  Polynomial<Rational> acc;
  for (std::size_t j = 0; j < c.size(); ++j) acc += legendre(static_cast<int>(j)) * from_double<Rational>(c[j]);
  return acc.cast<double>();
}

/// The values int_0^1 x^j |r|^{q-1} sgn r, j = 0..degree.
inline std::vector<double> residual_orthogonality(const PiecewisePolynomial<double>& r, double q, int degree) {
  if (!(q > 1.0) || std::isinf(q)) throw DomainError("residual_orthogonality: need 1 < q < inf");
  if (degree < 0) throw DomainError("residual_orthogonality: degree must be >= 0");
  const std::size_t dim = static_cast<std::size_t>(degree) + 1;
  std::vector<double> total(dim, 0.0);
  std::vector<double> part(dim);
  for (const auto& seg : sign_segments(r)) {
    if (seg.sign == 0) continue;
    const Polynomial<double>& p = r.piece(seg.piece);
    auto integrand = [&](double x, std::span<double> out) {
      const double v = p(x);
      double psi = std::pow(std::fabs(v), q - 1.0) * sign_of(v);
      for (std::size_t j = 0; j < dim; ++j) {
        out[j] = psi;
        psi *= x;
      }
    };
    integrate_adaptive_vector(integrand, dim, seg.lo, seg.hi, part, {1e-13, 0.0, 1 << 14});
    for (std::size_t j = 0; j < dim; ++j) total[j] += part[j];
  }
  return total;
}

namespace detail {

inline void check_approx_args(int degree, double q) {
  if (degree < 0) throw DomainError("best_approx: degree must be >= 0");
  if (degree >= kMaxDegree) throw DegreeCapError("best_approx: degree exceeds the cap");
  if (std::isnan(q) || q < 1.0) throw DomainError("best_approx: need q >= 1");
}

inline ApproxSolution make_solution(const PiecewisePolynomial<double>& f, std::vector<double> coeffs, std::string method) {
  ApproxSolution s;
  s.correction = legendre_combination(coeffs);
  s.legendre_coeffs = std::move(coeffs);
  s.residual = f - s.correction;
  s.method = std::move(method);
  return s;
}

/// Sample points (x, piece) sorted by piece then x; each piece contributes its own endpoints,
/// so a knot appears once per side and carries that side's limit.
class SampleGrid {
 public:
  struct Node {
    double x;
    std::size_t piece;
  };

  SampleGrid(const PiecewisePolynomial<double>& f, int per_piece) : f_(f) {
    const int K = std::max(per_piece, 2);
    for (std::size_t p = 0; p < f.size(); ++p) {
      const double lo = f.piece_lo(p);
      const double hi = f.piece_hi(p);
      for (int i = 0; i < K; ++i) {
        double x = lo + (hi - lo) * 0.5 * (1.0 - std::cos(std::numbers::pi * i / (K - 1)));
        if (i == 0) x = lo;
        if (i == K - 1) x = hi;
        if (!nodes_.empty() && nodes_.back().piece == p && x <= nodes_.back().x) continue;
        nodes_.push_back({x, p});
      }
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }

  /// Index of an existing node, or -1.
  int find(const Node& n) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n, less);
    if (it != nodes_.end() && it->piece == n.piece && it->x == n.x) return static_cast<int>(it - nodes_.begin());
    return -1;
  }

  /// Adds nodes inside their pieces; returns the new index of every old node.
  std::vector<int> insert(std::vector<Node> extra) {
    std::vector<Node> kept;
    for (const auto& n : extra) {
      if (n.piece >= f_.size()) continue;
      if (n.x < f_.piece_lo(n.piece) || n.x > f_.piece_hi(n.piece)) continue;
      kept.push_back(n);
    }
    std::sort(kept.begin(), kept.end(), less);
    std::vector<Node> merged;
    merged.reserve(nodes_.size() + kept.size());
    std::merge(nodes_.begin(), nodes_.end(), kept.begin(), kept.end(), std::back_inserter(merged), less);
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const Node& a, const Node& b) { return a.piece == b.piece && a.x == b.x; }),
                 merged.end());
    std::vector<int> remap(nodes_.size());
    auto old = nodes_;
    nodes_ = std::move(merged);
    for (std::size_t i = 0; i < old.size(); ++i) remap[i] = find(old[i]);
    return remap;
  }

  /// Local spacing around x inside piece p: the gap between the nodes that bracket x.
  double spacing(double x, std::size_t p) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), Node{x, p}, less);
    double lo = f_.piece_lo(p);
    double hi = f_.piece_hi(p);
    if (it != nodes_.end() && it->piece == p) hi = it->x;
    if (it != nodes_.begin() && std::prev(it)->piece == p) lo = std::prev(it)->x;
    if (hi == x && it + 1 != nodes_.end() && (it + 1)->piece == p) hi = (it + 1)->x;
    return std::max(hi - lo, 0.0);
  }

  /// Trapezoid weights per piece.
  Eigen::VectorXd weights() const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nodes_.size()));
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      if (nodes_[i].piece != nodes_[i + 1].piece) continue;
      const double h = nodes_[i + 1].x - nodes_[i].x;
      w[static_cast<Eigen::Index>(i)] += 0.5 * h;
      w[static_cast<Eigen::Index>(i + 1)] += 0.5 * h;
    }
    return w;
  }

  Eigen::VectorXd values() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(nodes_.size()));
    for (std::size_t i = 0; i < nodes_.size(); ++i) v[static_cast<Eigen::Index>(i)] = f_.piece(nodes_[i].piece)(nodes_[i].x);
    return v;
  }

  Eigen::MatrixXd legendre_matrix(int degree) const {
    Eigen::MatrixXd Phi(static_cast<Eigen::Index>(nodes_.size()), degree + 1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto vals = legendre_values(degree, nodes_[i].x);
      for (int j = 0; j <= degree; ++j) Phi(static_cast<Eigen::Index>(i), j) = vals[static_cast<std::size_t>(j)];
    }
    return Phi;
  }

 private:
  static bool less(const Node& a, const Node& b) { return a.piece < b.piece || (a.piece == b.piece && a.x < b.x); }

  const PiecewisePolynomial<double>& f_;
  std::vector<Node> nodes_;
};

// Vector integrand over the sign segments of r: [|r|^q, P_j psi (j <= d), x^j psi (j <= d)].
inline std::vector<double> smooth_terms(const PiecewisePolynomial<double>& r, double q, int d) {
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  const std::size_t dim = 1 + 2 * m;
  std::vector<double> total(dim, 0.0);
  std::vector<double> part(dim);
  for (const auto& seg : sign_segments(r)) {
    if (seg.sign == 0) continue;
    const Polynomial<double>& p = r.piece(seg.piece);
    auto integrand = [&](double x, std::span<double> out) {
      const double v = p(x);
      const double a = std::fabs(v);
      const double psi = std::pow(a, q - 1.0) * sign_of(v);
      out[0] = a * std::fabs(psi);
      const double s = 2.0 * x - 1.0;
      double p0 = 1.0;
      double p1 = s;
      double xp = 1.0;
      for (std::size_t j = 0; j < m; ++j) {
        double pj;
        if (j == 0) {
          pj = 1.0;
        } else if (j == 1) {
          pj = s;
        } else {
          const double l = static_cast<double>(j - 1);
          pj = ((2.0 * l + 1.0) * s * p1 - l * p0) / (l + 1.0);
          p0 = p1;
          p1 = pj;
        }
        out[1 + j] = pj * psi;
        out[1 + m + j] = xp * psi;
        xp *= x;
      }
    };
    integrate_adaptive_vector(integrand, dim, seg.lo, seg.hi, part, {1e-13, 0.0, 1 << 14});
    for (std::size_t j = 0; j < dim; ++j) total[j] += part[j];
  }
  return total;
}

// int P_i P_j max(|r|, delta)^{q-2} over [0;1].
inline Eigen::MatrixXd smooth_hessian(const PiecewisePolynomial<double>& r, double q, int d, double delta) {
  const int m = d + 1;
  const std::size_t dim = static_cast<std::size_t>(m * (m + 1) / 2);
  std::vector<double> total(dim, 0.0);
  std::vector<double> part(dim);
  for (const auto& seg : sign_segments(r)) {
    const Polynomial<double>& p = r.piece(seg.piece);
    auto integrand = [&](double x, std::span<double> out) {
      const double wgt = std::pow(std::max(std::fabs(p(x)), delta), q - 2.0);
      const auto leg = legendre_values(d, x);
      std::size_t k = 0;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) out[k++] = wgt * leg[static_cast<std::size_t>(i)] * leg[static_cast<std::size_t>(j)];
      }
    };
    integrate_adaptive_vector(integrand, dim, seg.lo, seg.hi, part, {1e-8, 0.0, 1 << 12});
    for (std::size_t j = 0; j < dim; ++j) total[j] += part[j];
  }
  Eigen::MatrixXd H(m, m);
  std::size_t k = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) H(i, j) = H(j, i) = total[k++];
  }
  return H;
}

}  // namespace detail

/// q = 2: orthogonal projection onto P_0..P_degree.
inline ApproxSolution best_approx_l2(const PiecewisePolynomial<double>& f, int degree) {
  detail::check_approx_args(degree, 2.0);
  std::vector<double> c;
  for (int j = 0; j <= degree; ++j) {
    c.push_back((2.0 * j + 1.0) * integrate_product(f, PiecewisePolynomial<double>(legendre<double>(j))));
  }
  ApproxSolution s = detail::make_solution(f, std::move(c), "l2-projection");
  s.value = lq_norm(s.residual, 2.0);
  s.diagnostics.orthogonality_defects = residual_orthogonality(s.residual, 2.0, degree);
  return s;
}

/// 1 < q < inf: damped Newton on int |f - u|^q in the Legendre basis, started from the
/// q = 2 projection. Stops when every defect is below smooth_tol * ||r||_q^{q-1}.
inline ApproxSolution best_approx_smooth(const PiecewisePolynomial<double>& f, int degree, double q,
                                         const ApproxOptions& opts = ApproxOptions::defaults()) {
  detail::check_approx_args(degree, q);
  if (!(q > 1.0) || std::isinf(q)) throw DomainError("best_approx_smooth: need 1 < q < inf");
  if (q == 2.0) return best_approx_l2(f, degree);
  const int m = degree + 1;
  ApproxSolution cur = best_approx_l2(f, degree);
  cur.method = "newton";
  std::vector<double> terms = detail::smooth_terms(cur.residual, q, degree);
  const double floor = 1e-13 * std::pow(std::max(lq_norm(f, q), 1e-300), q - 1.0);
  for (int iter = 0;; ++iter) {
    const double F = terms[0];
    const double norm = std::pow(F, 1.0 / q);
    cur.value = norm;
    cur.iterations = iter;
    cur.diagnostics.orthogonality_defects.assign(terms.begin() + 1 + m, terms.end());
    double worst = 0.0;
    for (double d : cur.diagnostics.orthogonality_defects) worst = std::max(worst, std::fabs(d));
    if (worst <= std::max(opts.smooth_tol * std::pow(norm, q - 1.0), floor)) return cur;
    if (iter >= opts.max_iterations) {
      throw NonConvergenceError("best_approx_smooth: iteration cap reached", cur);
    }
    Eigen::VectorXd grad(m);
    for (int j = 0; j < m; ++j) grad[j] = -q * terms[static_cast<std::size_t>(1 + j)];
    const double delta = 1e-8 * std::max(sup_norm(cur.residual), 1e-300);
    const Eigen::MatrixXd H = q * (q - 1.0) * detail::smooth_hessian(cur.residual, q, degree, delta);
    Eigen::VectorXd step = H.ldlt().solve(-grad);
    if (!step.allFinite()) step = -grad;
    const double predicted = grad.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      std::vector<double> c = cur.legendre_coeffs;
      for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] += t * step[j];
      ApproxSolution trial = detail::make_solution(f, std::move(c), "newton");
      std::vector<double> trial_terms = detail::smooth_terms(trial.residual, q, degree);
      // Below quadrature noise the objective cannot discriminate; take the Newton step.
      const bool noise = std::fabs(predicted) <= 1e-12 * F;
      if (noise || trial_terms[0] <= F + 1e-4 * t * predicted) {
        cur = std::move(trial);
        terms = std::move(trial_terms);
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NonConvergenceError("best_approx_smooth: line search failed", cur);
  }
}

/// q = 1: weighted discrete L1 fit on a Chebyshev grid, refined around residual sign
/// changes until the continuous value changes by less than l1_tol.
inline ApproxSolution best_approx_l1(const PiecewisePolynomial<double>& f, int degree,
                                     const ApproxOptions& opts = ApproxOptions::defaults()) {
  detail::check_approx_args(degree, 1.0);
  detail::SampleGrid grid(f, opts.grid_per_piece);
  std::vector<int> hint;
  ApproxSolution best;
  best.value = std::numeric_limits<double>::infinity();
  double previous = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  for (int round = 0;; ++round) {
    const Eigen::MatrixXd Phi = grid.legendre_matrix(degree);
    const DiscreteFit fit = weighted_l1_fit(Phi, grid.values(), grid.weights(), hint, opts.max_pivots);
    total_iterations += fit.iterations;
    ApproxSolution s = detail::make_solution(f, std::vector<double>(fit.coeffs.data(), fit.coeffs.data() + fit.coeffs.size()),
                                             "l1-descent");
    s.value = lq_norm(s.residual, 1.0);
    s.iterations = total_iterations;
    s.diagnostics.discretization_gap = s.value - fit.value;
    for (const auto& r : isolate_roots(s.residual, 0.0, 1.0).roots) {
      if (r.sign_change) s.diagnostics.sign_changes.push_back(r.location);
    }
    if (!fit.converged) throw NonConvergenceError("best_approx_l1: descent cap reached", s);
    const double change = std::fabs(s.value - previous);
    previous = s.value;
    if (s.value < best.value) best = s;
    if (change < opts.l1_tol) return best;
    if (round >= opts.max_refinements) throw NonConvergenceError("best_approx_l1: refinement cap reached", best);

    std::vector<detail::SampleGrid::Node> extra;
    for (const auto& r : isolate_roots(s.residual, 0.0, 1.0).roots) {
      if (r.at_knot) continue;
      const std::size_t p = s.residual.piece_index(r.location);
      const double h = grid.spacing(r.location, p);
      extra.push_back({r.location, p});
      for (int j = -16; j <= 16; ++j) extra.push_back({r.location + j * h / 32.0, p});
    }
    std::vector<detail::SampleGrid::Node> basis_nodes;
    for (int i : fit.basis) basis_nodes.push_back(grid.node(static_cast<std::size_t>(i)));
    const std::size_t before = grid.size();
    grid.insert(std::move(extra));
    if (grid.size() == before) return best;
    hint.clear();
    for (const auto& n : basis_nodes) hint.push_back(grid.find(n));
  }
}

/// q = inf: discrete Chebyshev fit through the dual LP, refined by adding every local
/// extremum of the continuous residual until the value changes by less than linf_tol.
inline ApproxSolution best_approx_linf(const PiecewisePolynomial<double>& f, int degree,
                                       const ApproxOptions& opts = ApproxOptions::defaults()) {
  detail::check_approx_args(degree, kInf);
  detail::SampleGrid grid(f, opts.grid_per_piece);
  std::vector<int> hint;
  ApproxSolution best;
  best.value = std::numeric_limits<double>::infinity();
  double previous = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  for (int round = 0;; ++round) {
    const Eigen::MatrixXd Phi = grid.legendre_matrix(degree);
    const DiscreteFit fit = minimax_fit(Phi, grid.values(), hint, opts.max_pivots);
    total_iterations += fit.iterations;
    ApproxSolution s = detail::make_solution(f, std::vector<double>(fit.coeffs.data(), fit.coeffs.data() + fit.coeffs.size()),
                                             "linf-simplex");
    const auto extrema = local_extrema(s.residual);
    s.value = 0.0;
    for (const auto& e : extrema) s.value = std::max(s.value, std::fabs(e.value));
    s.iterations = total_iterations;
    s.diagnostics.discretization_gap = s.value - fit.value;
    const double level = s.value - 1e-9 * std::max(1.0, s.value);
    for (const auto& e : extrema) {
      if (std::fabs(e.value) >= level) {
        if (s.diagnostics.active_points.empty() || s.diagnostics.active_points.back() != e.x) {
          s.diagnostics.active_points.push_back(e.x);
        }
      }
    }
    if (!fit.converged) throw NonConvergenceError("best_approx_linf: pivot cap reached", s);
    const double change = std::fabs(s.value - previous);
    previous = s.value;
    if (s.value < best.value) best = s;
    if (change < opts.linf_tol || s.diagnostics.discretization_gap <= opts.linf_tol) return best;
    if (round >= opts.max_refinements) throw NonConvergenceError("best_approx_linf: refinement cap reached", best);

    const int N = static_cast<int>(grid.size());
    std::vector<detail::SampleGrid::Node> old_nodes;
    for (std::size_t i = 0; i < grid.size(); ++i) old_nodes.push_back(grid.node(i));
    std::vector<detail::SampleGrid::Node> extra;
    for (const auto& e : extrema) extra.push_back({e.x, e.piece});
    const std::vector<int> remap = grid.insert(std::move(extra));
    const int N2 = static_cast<int>(grid.size());
    hint.clear();
    for (int b : fit.basis) {
      if (b < 0) {
        hint.push_back(b);
      } else if (b == 2 * N) {
        hint.push_back(2 * N2);
      } else if (b < N) {
        hint.push_back(remap[static_cast<std::size_t>(b)]);
      } else {
        hint.push_back(N2 + remap[static_cast<std::size_t>(b - N)]);
      }
    }
  }
}

/// Best L_q approximation of f by polynomials of the given degree.
inline ApproxSolution best_approx(const PiecewisePolynomial<double>& f, int degree, double q,
                                  const ApproxOptions& opts = ApproxOptions::defaults()) {
  detail::check_approx_args(degree, q);
  if (q == 1.0) return best_approx_l1(f, degree, opts);
  if (std::isinf(q)) return best_approx_linf(f, degree, opts);
  if (q == 2.0) return best_approx_l2(f, degree);
  return best_approx_smooth(f, degree, q, opts);
}

}  // namespace sharpconst
