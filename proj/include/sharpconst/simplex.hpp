#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sharpconst {

/// min cost^T x subject to A x = b and lower <= x <= upper.
/// Lower bounds must be finite; upper bounds may be +inf.
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd cost;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

/// Basis entries are column indices, or -1 - r for the artificial of row r.
struct SimplexOptions {
  int max_pivots = 50000;
  double tol = 1e-10;
  std::vector<int> initial_basis;
  // Starting values of the structural variables for a cold start, clamped to their bounds.
  Eigen::VectorXd initial_point;
};

struct SimplexResult {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;
  Eigen::VectorXd duals;
  double objective = 0.0;
  std::vector<int> basis;
  int pivots = 0;
};

namespace detail {

// Bounded-variable revised simplex with an explicit basis inverse, refactored every pivot.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts), m_(static_cast<int>(lp.A.rows())), n_(static_cast<int>(lp.A.cols())) {
    if (lp.b.size() != m_ || lp.cost.size() != n_ || lp.lower.size() != n_ || lp.upper.size() != n_) {
      throw std::invalid_argument("LinearProgram: inconsistent dimensions");
    }
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(lp.lower[j])) throw std::invalid_argument("LinearProgram: lower bounds must be finite");
    }
    const int total = n_ + m_;
    lo_.resize(total);
    hi_.resize(total);
    x_.resize(total);
    in_basis_.assign(static_cast<std::size_t>(total), -1);
    art_sign_.assign(static_cast<std::size_t>(m_), 1.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower[j];
      hi_[j] = lp.upper[j];
      x_[j] = lp.lower[j];
    }
  }

  SimplexResult run() {
    SimplexResult result;
    const bool warm = try_warm_start();
    if (!warm) cold_start();
    int pivots = 0;
    if (!warm && needs_phase_one_) {
      Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n_ + m_);
      for (int r = 0; r < m_; ++r) c1[n_ + r] = 1.0;
      const LpStatus s = iterate(c1, pivots);
      if (s == LpStatus::iteration_limit) return finish(result, LpStatus::iteration_limit, pivots);
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r) infeas += x_[n_ + r];
      if (infeas > 1e-9 * std::max(1.0, lp_.b.lpNorm<Eigen::Infinity>())) {
        return finish(result, LpStatus::infeasible, pivots);
      }
    }
    for (int r = 0; r < m_; ++r) {
      hi_[n_ + r] = 0.0;
      x_[n_ + r] = std::min(x_[n_ + r], 0.0);
    }
    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n_ + m_);
    c2.head(n_) = lp_.cost;
    const LpStatus s = iterate(c2, pivots);
    return finish(result, s, pivots);
  }

 private:
  double column_dot(int j, const Eigen::VectorXd& y) const {
    if (j < n_) return lp_.A.col(j).dot(y);
    return art_sign_[static_cast<std::size_t>(j - n_)] * y[j - n_];
  }

  Eigen::VectorXd column(int j) const {
    if (j < n_) return lp_.A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    e[j - n_] = art_sign_[static_cast<std::size_t>(j - n_)];
    return e;
  }

  void set_basis(const std::vector<int>& vars) {
    std::fill(in_basis_.begin(), in_basis_.end(), -1);
    basis_ = vars;
    for (int i = 0; i < m_; ++i) in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = i;
  }

  // Recomputes the basis inverse and the basic values from the nonbasic ones.
  bool refactor() {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (lu.rank() < m_) return false;
    binv_ = lu.inverse();
    Eigen::VectorXd xn = x_.head(n_);
    for (int j : basis_) {
      if (j < n_) xn[j] = 0.0;
    }
    Eigen::VectorXd rhs = lp_.b;
    rhs.noalias() -= lp_.A * xn;
    for (int r = 0; r < m_; ++r) {
      const int j = n_ + r;
      if (in_basis_[static_cast<std::size_t>(j)] < 0 && x_[j] != 0.0) rhs[r] -= art_sign_[static_cast<std::size_t>(r)] * x_[j];
    }
    const Eigen::VectorXd xb = binv_ * rhs;
    for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] = xb[i];
    return true;
  }

  bool try_warm_start() {
    if (static_cast<int>(opts_.initial_basis.size()) != m_) return false;
    std::vector<int> vars;
    for (int v : opts_.initial_basis) {
      const int j = v >= 0 ? v : n_ + (-1 - v);
      if (j < 0 || j >= n_ + m_) return false;
      vars.push_back(j);
    }
    std::vector<int> sorted = vars;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (int r = 0; r < m_; ++r) {
      lo_[n_ + r] = 0.0;
      hi_[n_ + r] = 0.0;
      x_[n_ + r] = 0.0;
    }
    set_basis(vars);
    if (!refactor()) return false;
    const double slack = 1e-9 * std::max(1.0, lp_.b.lpNorm<Eigen::Infinity>());
    for (int j : vars) {
      if (x_[j] < lo_[j] - slack || x_[j] > hi_[j] + slack) {
        for (int jj : vars) x_[jj] = jj < n_ ? lo_[jj] : 0.0;
        return false;
      }
    }
    return true;
  }

  void cold_start() {
    const bool seeded = opts_.initial_point.size() == n_;
    for (int j = 0; j < n_; ++j) x_[j] = seeded ? std::clamp(opts_.initial_point[j], lo_[j], hi_[j]) : lo_[j];
    Eigen::VectorXd residual = lp_.b;
    residual.noalias() -= lp_.A * x_.head(n_);
    std::vector<int> vars;
    needs_phase_one_ = false;
    for (int r = 0; r < m_; ++r) {
      art_sign_[static_cast<std::size_t>(r)] = residual[r] >= 0.0 ? 1.0 : -1.0;
      lo_[n_ + r] = 0.0;
      hi_[n_ + r] = std::numeric_limits<double>::infinity();
      x_[n_ + r] = std::fabs(residual[r]);
      if (x_[n_ + r] > 0.0) needs_phase_one_ = true;
      vars.push_back(n_ + r);
    }
    set_basis(vars);
    refactor();
  }

  LpStatus iterate(const Eigen::VectorXd& c, int& pivots) {
    const double cmax = std::max(1.0, c.lpNorm<Eigen::Infinity>());
    const double dtol = opts_.tol * cmax;
    int degenerate_run = 0;
    while (true) {
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = c[basis_[static_cast<std::size_t>(i)]];
      y_ = binv_.transpose() * cb;
      const Eigen::VectorXd d_struct = c.head(n_) - lp_.A.transpose() * y_;
      const bool bland = degenerate_run > 50;
      int enter = -1;
      double best = 0.0;
      candidates_.clear();
      for (int j = 0; j < n_ + m_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)] >= 0 || hi_[j] <= lo_[j]) continue;
        const double d = j < n_ ? d_struct[j] : c[j] - column_dot(j, y_);
        const bool at_upper = x_[j] >= hi_[j];
        double gain = 0.0;
        if (!at_upper && d < -dtol) gain = -d;
        if (at_upper && d > dtol) gain = d;
        if (gain <= 0.0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::isfinite(hi_[j])) candidates_.push_back({gain, j});
        if (gain > best) {
          best = gain;
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      if (pivots >= opts_.max_pivots) return LpStatus::iteration_limit;
      ++pivots;
      if (!bland && flip_batch(enter)) {
        degenerate_run = 0;
        continue;
      }

      const double sigma = x_[enter] >= hi_[enter] ? -1.0 : 1.0;
      const Eigen::VectorXd alpha = binv_ * column(enter);
      const double amax = std::max(1.0, alpha.lpNorm<Eigen::Infinity>());
      double theta = std::numeric_limits<double>::infinity();
      int leave = -1;
      bool leave_to_upper = false;
      double leave_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double delta = -sigma * alpha[i];
        if (std::fabs(delta) <= 1e-11 * amax) continue;
        const int bj = basis_[static_cast<std::size_t>(i)];
        double limit;
        bool to_upper;
        if (delta < 0.0) {
          limit = (x_[bj] - lo_[bj]) / -delta;
          to_upper = false;
        } else {
          if (!std::isfinite(hi_[bj])) continue;
          limit = (hi_[bj] - x_[bj]) / delta;
          to_upper = true;
        }
        limit = std::max(limit, 0.0);
        const bool better = limit < theta - 1e-13 * std::max(1.0, theta) ||
                            (limit <= theta + 1e-13 * std::max(1.0, theta) && std::fabs(delta) > leave_pivot);
        if (leave < 0 || better) {
          theta = limit;
          leave = i;
          leave_to_upper = to_upper;
          leave_pivot = std::fabs(delta);
        }
      }
      const double flip = hi_[enter] - lo_[enter];
      if (std::isfinite(flip) && flip <= theta) {
        x_[enter] = sigma > 0 ? hi_[enter] : lo_[enter];
        for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] -= sigma * flip * alpha[i];
        if (++flips_since_refactor_ >= 64) {
          refactor();
          flips_since_refactor_ = 0;
        }
        degenerate_run = 0;
        continue;
      }
      if (leave < 0) return LpStatus::unbounded;
      degenerate_run = theta <= 1e-14 ? degenerate_run + 1 : 0;
      const int out = basis_[static_cast<std::size_t>(leave)];
      x_[enter] += sigma * theta;
      x_[out] = leave_to_upper ? hi_[out] : lo_[out];
      in_basis_[static_cast<std::size_t>(out)] = -1;
      basis_[static_cast<std::size_t>(leave)] = enter;
      in_basis_[static_cast<std::size_t>(enter)] = leave;
      if (!refactor()) throw std::runtime_error("simplex: basis became singular");
    }
  }

  // Bound flips leave the duals unchanged, so every attractive boxed variable can flip in
  // one pass while the basic values stay within their bounds.
  bool flip_batch(int enter) {
    if (!std::isfinite(hi_[enter])) return false;
    const auto top = candidates_.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(candidates_.size(), 32));
    std::partial_sort(candidates_.begin(), top, candidates_.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    candidates_.erase(top, candidates_.end());
    const double slack = 1e-12 * std::max(1.0, lp_.b.lpNorm<Eigen::Infinity>());
    int flipped = 0;
    Eigen::VectorXd xb(m_);
    for (const auto& cand : candidates_) {
      const int j = cand.second;
      const double sigma = x_[j] >= hi_[j] ? -1.0 : 1.0;
      const double flip = hi_[j] - lo_[j];
      const Eigen::VectorXd alpha = binv_ * column(j);
      bool ok = true;
      for (int i = 0; i < m_ && ok; ++i) {
        const int bj = basis_[static_cast<std::size_t>(i)];
        xb[i] = x_[bj] - sigma * flip * alpha[i];
        ok = xb[i] >= lo_[bj] - slack && xb[i] <= hi_[bj] + slack;
      }
      if (!ok) break;
      x_[j] = sigma > 0 ? hi_[j] : lo_[j];
      for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] = xb[i];
      ++flipped;
    }
    if (flipped == 0) return false;
    refactor();
    return true;
  }

  SimplexResult& finish(SimplexResult& r, LpStatus status, int pivots) {
    r.status = status;
    r.pivots = pivots;
    r.x = x_.head(n_);
    r.duals = y_.size() == m_ ? y_ : Eigen::VectorXd::Zero(m_);
    r.objective = lp_.cost.dot(r.x);
    r.basis.clear();
    for (int j : basis_) r.basis.push_back(j < n_ ? j : -1 - (j - n_));
    return r;
  }

  const LinearProgram& lp_;
  const SimplexOptions& opts_;
  int m_;
  int n_;
  Eigen::VectorXd lo_, hi_, x_, y_;
  Eigen::MatrixXd binv_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  std::vector<double> art_sign_;
  bool needs_phase_one_ = false;
  int flips_since_refactor_ = 0;
  std::vector<std::pair<double, int>> candidates_;
};

}  // namespace detail

inline SimplexResult solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {}) {
  return detail::BoundedSimplex(lp, opts).run();
}

/// Discrete fit result: coefficients in the column basis of Phi.
struct DiscreteFit {
  Eigen::VectorXd coeffs;
  double value = 0.0;
  std::vector<int> basis;
  int iterations = 0;
  bool converged = true;
};

/// min_c sum_i w_i |f_i - (Phi c)_i| by descent along the edges of the interpolation
/// vertices: each vertex interpolates f at m = cols(Phi) rows, each edge frees one of them.
/// hint lists m row indices to start from; otherwise rows spread over the index range are used.
inline DiscreteFit weighted_l1_fit(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& f, const Eigen::VectorXd& w,
                                   std::vector<int> hint = {}, int max_iterations = 10000,
                                   bool settle_degenerate = true) {
  const int N = static_cast<int>(Phi.rows());
  const int m = static_cast<int>(Phi.cols());
  if (N < m) throw std::invalid_argument("weighted_l1_fit: fewer rows than unknowns");
  std::vector<int> basis;
  auto usable = [&](const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != m) return false;
    for (int i : b) {
      if (i < 0 || i >= N) return false;
    }
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i) B.row(i) = Phi.row(b[static_cast<std::size_t>(i)]);
    return Eigen::FullPivLU<Eigen::MatrixXd>(B).rank() == m;
  };
  if (usable(hint)) {
    basis = hint;
  } else {
    for (int i = 0; i < m; ++i) {
      const double s = 0.5 * (1.0 - std::cos(std::numbers::pi * (i + 0.5) / m));
      basis.push_back(std::clamp(static_cast<int>(s * (N - 1)), 0, N - 1));
    }
    std::sort(basis.begin(), basis.end());
    for (int i = 1; i < m; ++i) basis[static_cast<std::size_t>(i)] = std::max(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i - 1)] + 1);
    for (int i = m - 1; i >= 0 && basis[static_cast<std::size_t>(i)] > N - m + i; --i) basis[static_cast<std::size_t>(i)] = N - m + i;
    if (!usable(basis)) {
      // Greedy row selection by pivoted QR of Phi^T.
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Phi.transpose());
      basis.clear();
      for (int i = 0; i < m; ++i) basis.push_back(qr.colsPermutation().indices()[i]);
    }
  }

  const double fscale = std::max(1.0, f.lpNorm<Eigen::Infinity>());
  const double zero_tol = 1e-14 * fscale;
  const double wsum = w.sum();
  DiscreteFit fit;
  std::vector<char> is_basic(static_cast<std::size_t>(N), 0);
  Eigen::VectorXd c(m);
  Eigen::VectorXd r(N);
  Eigen::MatrixXd Binv(m, m);
  struct Crossing {
    double t;
    int row;
    double step;
  };
  std::vector<Crossing> crossings;
  crossings.reserve(static_cast<std::size_t>(N));
  bool uncertain = false;
  for (int iter = 0;; ++iter) {
    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd fb(m);
    std::fill(is_basic.begin(), is_basic.end(), 0);
    for (int i = 0; i < m; ++i) {
      const int row = basis[static_cast<std::size_t>(i)];
      B.row(i) = Phi.row(row);
      fb[i] = f[row];
      is_basic[static_cast<std::size_t>(row)] = 1;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Binv = lu.inverse();
    c = Binv * fb;
    r = f - Phi * c;
    for (int i : basis) r[i] = 0.0;
    fit.iterations = iter;
    if (iter >= max_iterations) {
      fit.converged = false;
      break;
    }
    // Column k of V holds the values of the edge direction that frees basic row k.
    const Eigen::MatrixXd V = Phi * Binv;
    Eigen::VectorXd signed_sum = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd zero_sum = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < N; ++i) {
      if (is_basic[static_cast<std::size_t>(i)]) continue;
      if (std::fabs(r[i]) <= zero_tol) {
        zero_sum += w[i] * V.row(i).transpose().cwiseAbs();
      } else {
        signed_sum += (r[i] > 0 ? w[i] : -w[i]) * V.row(i).transpose();
      }
    }
    int best_k = -1;
    double best_sigma = 0.0;
    double best_slope = -1e-13 * wsum;
    for (int k = 0; k < m; ++k) {
      const double wk = w[basis[static_cast<std::size_t>(k)]];
      for (double sigma : {1.0, -1.0}) {
        const double slope = wk - sigma * signed_sum[k] + zero_sum[k];
        if (slope < best_slope) {
          best_slope = slope;
          best_k = k;
          best_sigma = sigma;
        }
      }
    }
    if (best_k < 0) {
      // Zero multipliers on the zero rows certify the vertex unless some basic row needs them.
      for (int k = 0; k < m && !uncertain; ++k) {
        uncertain = std::fabs(signed_sum[k]) > w[basis[static_cast<std::size_t>(k)]] * (1.0 + 1e-12) + 1e-15 * wsum;
      }
      break;
    }
    crossings.clear();
    for (int i = 0; i < N; ++i) {
      if (is_basic[static_cast<std::size_t>(i)]) continue;
      const double v = best_sigma * V(i, best_k);
      if (v == 0.0 || std::fabs(r[i]) <= zero_tol) continue;
      const double t = r[i] / v;
      if (t > 0.0) crossings.push_back({t, i, 2.0 * w[i] * std::fabs(v)});
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.t < b.t || (a.t == b.t && a.row < b.row); });
    double slope = best_slope;
    int enter = -1;
    for (const auto& cr : crossings) {
      slope += cr.step;
      if (slope >= 0.0) {
        enter = cr.row;
        break;
      }
    }
    if (enter < 0) throw std::runtime_error("weighted_l1_fit: unbounded descent direction");
    basis[static_cast<std::size_t>(best_k)] = enter;
  }
  fit.coeffs = c;
  fit.value = (w.array() * r.array().abs()).sum();
  fit.basis = basis;
  // Nonbasic zero residuals can make the edge test inconclusive.
  if (!fit.converged || !uncertain || !settle_degenerate) return fit;
  // Multipliers for the zero rows by Lawson reweighting toward the smallest max-norm solution;
  // if they fit in [-1, 1] the vertex is optimal.
  {
    std::vector<int> zero_rows;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < N; ++i) {
      if (is_basic[static_cast<std::size_t>(i)] || std::fabs(r[i]) <= zero_tol) {
        zero_rows.push_back(i);
      } else {
        g += (r[i] > 0 ? w[i] : -w[i]) * Phi.row(i).transpose();
      }
    }
    const int nz = static_cast<int>(zero_rows.size());
    Eigen::MatrixXd Az(m, nz);
    for (int j = 0; j < nz; ++j) Az.col(j) = w[zero_rows[static_cast<std::size_t>(j)]] * Phi.row(zero_rows[static_cast<std::size_t>(j)]).transpose();
    Eigen::VectorXd u = Eigen::VectorXd::Ones(nz);
    for (int pass = 0; pass < 10; ++pass) {
      const Eigen::MatrixXd AU = Az * u.asDiagonal();
      const Eigen::VectorXd mu = (AU * Az.transpose()).ldlt().solve(-g);
      if (!mu.allFinite()) break;
      const Eigen::VectorXd lambda = (u.array() * (Az.transpose() * mu).array()).matrix();
      const double peak = lambda.lpNorm<Eigen::Infinity>();
      if (peak <= 1.0 + 1e-12) return fit;
      u = (u.array() * lambda.array().abs()).matrix();
      const double total = u.sum();
      if (!(total > 0.0)) break;
      u /= total;
      u = u.cwiseMax(1e-300);
    }
  }
  // Otherwise lift the degeneracy: nudge the zero rows by a tiny deterministic amount and descend again.
  Eigen::VectorXd nudged = f;
  for (int i = 0; i < N; ++i) {
    if (!is_basic[static_cast<std::size_t>(i)] && std::fabs(r[i]) > zero_tol) continue;
    const double frac = std::fmod(0.6180339887498949 * (i + 1), 1.0);
    nudged[i] += 1e-10 * fscale * (0.5 + 0.5 * frac) * (i % 2 == 0 ? 1.0 : -1.0);
  }
  const DiscreteFit lifted = weighted_l1_fit(Phi, nudged, w, basis, max_iterations, false);
  fit.iterations += lifted.iterations;
  fit.converged = lifted.converged;
  const double value = (w.array() * (f - Phi * lifted.coeffs).array().abs()).sum();
  if (value < fit.value) {
    fit.coeffs = lifted.coeffs;
    fit.value = value;
    fit.basis = lifted.basis;
  }
  return fit;
}

/// min_c max_i |f_i - (Phi c)_i| through the dual LP
///   max f^T (mu - nu)  s.t.  Phi^T (mu - nu) = 0,  sum (mu + nu) + s = 1,  mu, nu, s >= 0.
/// Columns: mu_i = i, nu_i = N + i, s = 2N. hint is a previous basis in that numbering.
inline DiscreteFit minimax_fit(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& f, std::vector<int> hint = {},
                               int max_pivots = 50000) {
  const int N = static_cast<int>(Phi.rows());
  const int m = static_cast<int>(Phi.cols());
  LinearProgram lp;
  lp.A.resize(m + 1, 2 * N + 1);
  lp.A.block(0, 0, m, N) = Phi.transpose();
  lp.A.block(0, N, m, N) = -Phi.transpose();
  lp.A.col(2 * N).setZero();
  lp.A.row(m).setOnes();
  lp.b = Eigen::VectorXd::Zero(m + 1);
  lp.b[m] = 1.0;
  lp.cost.resize(2 * N + 1);
  lp.cost.head(N) = -f;
  lp.cost.segment(N, N) = f;
  lp.cost[2 * N] = 0.0;
  lp.lower = Eigen::VectorXd::Zero(2 * N + 1);
  lp.upper = Eigen::VectorXd::Constant(2 * N + 1, std::numeric_limits<double>::infinity());
  SimplexOptions opts;
  opts.max_pivots = max_pivots;
  if (static_cast<int>(hint.size()) == m + 1) {
    opts.initial_basis = std::move(hint);
  } else {
    for (int r = 0; r < m; ++r) opts.initial_basis.push_back(-1 - r);
    opts.initial_basis.push_back(2 * N);
  }
  const SimplexResult res = solve_lp(lp, opts);
  if (res.status == LpStatus::infeasible || res.status == LpStatus::unbounded) {
    throw std::runtime_error("minimax_fit: dual LP reported infeasible or unbounded");
  }
  DiscreteFit fit;
  fit.coeffs = -res.duals.head(m);
  fit.value = -res.objective;
  fit.basis = res.basis;
  fit.iterations = res.pivots;
  fit.converged = res.status == LpStatus::optimal;
  return fit;
}

}  // namespace sharpconst
