#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace sharpconst {

/// n-point Gauss-Legendre rule on [-1;1].
template <int N>
struct GaussRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussRule() {
    for (int i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int l = 2; l <= N; ++l) {
          const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      nodes[static_cast<std::size_t>(i)] = -x;
      nodes[static_cast<std::size_t>(N - 1 - i)] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[static_cast<std::size_t>(i)] = w;
      weights[static_cast<std::size_t>(N - 1 - i)] = w;
    }
  }
};

inline const GaussRule<32>& gauss32() {
  static const GaussRule<32> rule;
  return rule;
}

/// One application of the 32-node rule on [lo; hi].
template <class F>
double gauss32_integral(F&& f, double lo, double hi) {
  const auto& rule = gauss32();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < 32; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_segments = 1 << 14;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int segments = 0;
  bool converged = true;
};

/// Adaptive 32-node Gauss integration with recursive halving.
///
/// A subinterval is accepted once the halves change its estimate by no more
/// than max(rel_tol * scale, abs_tol), where scale estimates int |f| over the
/// whole range. Past max_segments the remaining estimates are accepted as
/// they are and converged is cleared.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
  QuadratureResult result;
  if (!(hi > lo)) return result;
  struct Interval {
    double lo;
    double hi;
    double estimate;
  };
  std::vector<Interval> stack{{lo, hi, gauss32_integral(f, lo, hi)}};
  const double scale = gauss32_integral([&](double x) { return std::fabs(f(x)); }, lo, hi);
  const double tol = std::max(opts.rel_tol * scale, opts.abs_tol);
  int live = 1;
  while (!stack.empty()) {
    Interval cur = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (cur.lo + cur.hi);
    const double left = gauss32_integral(f, cur.lo, mid);
    const double right = gauss32_integral(f, mid, cur.hi);
    const double refined = left + right;
    const double diff = std::fabs(refined - cur.estimate);
    const bool tiny = !(mid > cur.lo && mid < cur.hi);
    if (diff <= tol || tiny) {
      result.value += refined;
      result.error += diff;
      ++result.segments;
      --live;
      continue;
    }
    if (live + 1 > opts.max_segments) {
      result.value += refined;
      result.error += diff;
      result.converged = false;
      ++result.segments;
      --live;
      continue;
    }
    stack.push_back({mid, cur.hi, right});
    stack.push_back({cur.lo, mid, left});
    ++live;
  }
  return result;
}

/// Vector-valued variant: f(x, out) fills out[0..dim). The acceptance test
/// uses the largest component change against the largest int |f_c|.
template <class F>
QuadratureResult integrate_adaptive_vector(F&& f, std::size_t dim, double lo, double hi, std::span<double> out,
                                           const QuadratureOptions& opts = {}) {
  QuadratureResult result;
  std::fill(out.begin(), out.end(), 0.0);
  if (!(hi > lo) || dim == 0) return result;
  const auto& rule = gauss32();
  std::vector<double> scratch(dim);
  auto apply = [&](double a, double b, bool absolute = false) {
    std::vector<double> acc(dim, 0.0);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < 32; ++i) {
      f(mid + half * rule.nodes[i], std::span<double>(scratch));
      for (std::size_t c = 0; c < dim; ++c) acc[c] += rule.weights[i] * (absolute ? std::fabs(scratch[c]) : scratch[c]);
    }
    for (double& v : acc) v *= half;
    return acc;
  };
  struct Interval {
    double lo;
    double hi;
    std::vector<double> estimate;
  };
  std::vector<Interval> stack;
  stack.push_back({lo, hi, apply(lo, hi)});
  const auto magnitude = apply(lo, hi, true);
  const double tol = std::max(opts.rel_tol * *std::max_element(magnitude.begin(), magnitude.end()), opts.abs_tol);
  int live = 1;
  while (!stack.empty()) {
    Interval cur = std::move(stack.back());
    stack.pop_back();
    const double mid = 0.5 * (cur.lo + cur.hi);
    std::vector<double> left = apply(cur.lo, mid);
    std::vector<double> right = apply(mid, cur.hi);
    double diff = 0.0;
    for (std::size_t c = 0; c < dim; ++c) diff = std::max(diff, std::fabs(left[c] + right[c] - cur.estimate[c]));
    const bool tiny = !(mid > cur.lo && mid < cur.hi);
    const bool accept = diff <= tol || tiny;
    if (accept || live + 1 > opts.max_segments) {
      for (std::size_t c = 0; c < dim; ++c) out[c] += left[c] + right[c];
      result.error += diff;
      ++result.segments;
      --live;
      if (!accept) result.converged = false;
      continue;
    }
    stack.push_back({mid, cur.hi, std::move(right)});
    stack.push_back({cur.lo, mid, std::move(left)});
    ++live;
  }
  result.value = out.empty() ? 0.0 : out[0];
  return result;
}

}  // namespace sharpconst
