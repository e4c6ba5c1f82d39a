#pragma once

#include "sharpconst/constants.hpp"
#include "sharpconst/io.hpp"
#include "sharpconst/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace sharpconst {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
  /// Criterion ids to run; empty runs all.
  std::vector<int> only;
};

namespace detail {

inline std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

class CriterionLog {
 public:
  explicit CriterionLog(CriterionResult& r) : r_(r) { r_.passed = true; }
  void check(bool ok, std::string what) {
    if (!ok) r_.passed = false;
    r_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + std::move(what));
  }
  void note(std::string what) { r_.details.push_back("     " + std::move(what)); }

 private:
  CriterionResult& r_;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void check_lambda(CriterionLog& log, int n, int k, double expected, int jobs, double budget,
                         const std::function<bool(double)>& argmax_ok = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const LambdaResult r = lambda_constant(n, k, kInf, jobs);
  const double secs = seconds_since(t0);
  log.check(std::fabs(r.optimized - expected) <= 1e-5,
            fmt("lambda(%d,%d,inf) = %.10f, expected %.10f (method %s)", n, k, r.optimized, expected, r.method.c_str()));
  if (argmax_ok) log.check(argmax_ok(r.argmax_a), fmt("argmax a = %.8f", r.argmax_a));
  log.check(secs < budget, fmt("runtime %.1f s < %.0f s", secs, budget));
}

inline void criterion_odd(CriterionLog& log, const VerifyOptions& o) {
  check_lambda(log, 1, 0, 0.5, o.jobs, 30.0);
  check_lambda(log, 3, 2, 0.5 * std::tan(std::numbers::pi / 8.0), o.jobs, 30.0);
}

inline void criterion_even(CriterionLog& log, const VerifyOptions& o) {
  auto near_pair = [](int n) {
    const double s = std::sin(std::numbers::pi * n / (4.0 * (n + 1)));
    const double a = s * s;
    return [a](double x) { return std::fabs(x - a) <= 1e-4 || std::fabs(x - (1.0 - a)) <= 1e-4; };
  };
  check_lambda(log, 2, 1, 0.25, o.jobs, 1e9, near_pair(2));
  check_lambda(log, 4, 3, 0.5 * std::tan(std::numbers::pi / 10.0) * std::sin(2.0 * std::numbers::pi / 5.0), o.jobs, 1e9,
               near_pair(4));
}

inline void criterion_local_maxima(CriterionLog& log, const VerifyOptions& o) {
  const int n = 3;
  const auto rows = A_profile(n, n - 1, kInf, 1001, o.jobs);
  auto A_at = [&](double a) { return A_value(ProblemSpec{n, n - 1, kInf, a}); };
  std::vector<std::pair<double, double>> found;
  for (std::size_t i : grid_local_maxima(rows)) {
    const double lo = i > 0 ? rows[i - 1].a : rows[i].a / 2.0;
    const double hi = i + 1 < rows.size() ? rows[i + 1].a : (rows[i].a + 1.0) / 2.0;
    found.push_back(golden_max(A_at, lo, hi, 1e-8));
  }
  const auto expected = local_max_points(n);
  log.check(found.size() == expected.size(), fmt("%zu local maxima found, expected %zu", found.size(), expected.size()));
  for (std::size_t j = 0; j < std::min(found.size(), expected.size()); ++j) {
    const auto [a, A] = found[j];
    log.check(std::fabs(a - expected[j]) <= 1e-3, fmt("local max at %.7f, expected %.7f", a, expected[j]));
    const double B = envelope_B(n, a);
    log.check(std::fabs(A - B) <= 1e-5, fmt("A = %.9f, B = %.9f there", A, B));
  }
}

inline void criterion_p_one(CriterionLog& log, const VerifyOptions& o) {
  for (int n = 1; n <= 5; ++n) {
    const LambdaResult r = lambda_constant(n, n - 1, 1.0, o.jobs);
    log.check(std::fabs(r.optimized - 0.5) <= 1e-6, fmt("sup A(%d,%d,1) = %.10f", n, n - 1, r.optimized));
    double low = kInf;
    for (const auto& row : A_profile(n, n - 1, 1.0, 201, o.jobs)) low = std::min(low, row.A);
    log.check(low >= 0.5 - 1e-9, fmt("min sampled A(%d,%d,1) = %.12f", n, n - 1, low));
  }
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n - 1; ++k) {
      double fact = 1.0;
      for (int i = 2; i <= n - k - 1; ++i) fact *= i;
      const double bound = 0.5 / fact;
      const LambdaResult r = lambda_constant(n, k, 1.0, o.jobs);
      log.check(r.optimized <= bound + 1e-6, fmt("sup A(%d,%d,1) = %.10f <= %.10f", n, k, r.optimized, bound));
    }
  }
}

inline void criterion_p_two(CriterionLog& log, const VerifyOptions&) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst[3] = {0.0, 0.0, 0.0};
  int failures = 0;
  auto rel = [](double x, double y) { return std::fabs(x - y) / std::max(std::fabs(x), std::fabs(y)); };
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n; ++k) {
      for (int i = 1; i <= 9; ++i) {
        const double a = i / 10.0;
        const double exact = std::sqrt(to_double(exact_A2(n, k, Rational(i, 10))));
        const double solver = best_approx_smooth(kernel_g_deriv_n(n, k, a), n - 1, 2.0).value;
        const double series = std::sqrt(series_A2(n, k, a, 400));
        const double d[3] = {rel(exact, solver), rel(exact, series), rel(solver, series)};
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
          worst[j] = std::max(worst[j], d[j]);
          ok = ok && d[j] <= 1e-6;
        }
        if (!ok) {
          ++failures;
          if (failures <= 6) {
            log.check(false, fmt("n=%d k=%d a=%.1f exact %.12g solver %.12g series %.12g", n, k, a, exact, solver, series));
          }
        }
      }
    }
  }
  log.check(failures == 0, fmt("%d of 135 cases outside 1e-6", failures));
  log.note(fmt("worst rel diff: exact/solver %.2e, exact/series %.2e, solver/series %.2e", worst[0], worst[1], worst[2]));

  bool orth = true;
  bool jump = true;
  std::mt19937 rng(5);
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k < n; ++k) {
      for (const Rational& a : {Rational(1, 3), Rational(2, 7), Rational(5, 8)}) {
        const auto g = kernel_g_deriv_n(n, k, a);
        for (int j = 0; j < n; ++j) {
          if (exact_integral(g * Polynomial<Rational>::monomial(j)) != 0) orth = false;
        }
        NuVector<Rational> nu;
        for (int l = 0; l < n; ++l) nu.values.emplace_back(static_cast<int>(rng() % 21) - 10, 1 + static_cast<int>(rng() % 7));
        const auto Q = build_Q(n, k, a, nu);
        if (Q.piece(0) - Q.piece(1) != spline_S(n, k, a).piece(0)) jump = false;
      }
    }
  }
  log.check(orth, "exact g^(n) orthogonal to polynomials of degree < n, n <= 8");
  log.check(jump, "exact Q jump equals S, n <= 8");
  const double secs = seconds_since(t0);
  log.check(secs < 120.0, fmt("runtime %.1f s < 120 s", secs));
}

inline void criterion_identity(CriterionLog& log, const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> ua(0.05, 0.95);
  for (int n = 1; n <= 4; ++n) {
    double worst = 0.0;
    int bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      const double a = ua(rng);
      Polynomial<double> tail;
      for (int m = n; m <= n + 4; ++m) tail += legendre<double>(m) * u(rng);
      const auto h = PiecewisePolynomial<double>(tail) + kernel_g_deriv_n(n, k, a) * u(rng);
      const auto y = test_function_from(h, n, 1e-11);
      NuVector<double> nu;
      for (int l = 0; l < n; ++l) nu.values.push_back(u(rng));
      const auto Q = build_Q(ProblemSpec{n, k, 2.0, a}, nu);
      const double yk = y.value(k, a);
      const double err = std::fabs(yk - integrate_product(h, Q)) / (1.0 + std::fabs(yk));
      worst = std::max(worst, err);
      if (err > 1e-10) ++bad;
    }
    log.check(bad == 0, fmt("n=%d: %d of 100 cases above 1e-10, worst scaled error %.2e", n, bad, worst));
  }
}

inline void criterion_optimality(CriterionLog& log, const VerifyOptions&) {
  for (double p : {1.5, 3.0, 4.0}) {
    const double q = conjugate_exponent(p);
    double worst_defect = 0.0;
    double worst_ratio = 0.0;
    int bad = 0;
    for (int n = 1; n <= 4; ++n) {
      for (int k = 0; k < n; ++k) {
        for (double a : {0.2, 0.5, 0.8}) {
          const ProblemSpec spec{n, k, p, a};
          const auto sol = best_approx(kernel_g_deriv_n(n, k, a), n - 1, q);
          const double scale = std::pow(sol.value, q - 1.0);
          for (double d : residual_orthogonality(sol.residual, q, n - 1)) {
            worst_defect = std::max(worst_defect, std::fabs(d) / scale);
          }
          const auto w = extremal_witness(spec);
          const double r = std::fabs(w.ratio - sol.value) / sol.value;
          worst_ratio = std::max(worst_ratio, r);
          if (r > 1e-7) ++bad;
        }
      }
    }
    log.check(worst_defect <= 1e-9, fmt("p=%g: worst defect / ||r||^(q-1) = %.2e", p, worst_defect));
    log.check(bad == 0, fmt("p=%g: witness ratio vs A worst rel %.2e", p, worst_ratio));
  }
}

inline void criterion_hypothesis(CriterionLog& log, const VerifyOptions& o) {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n; ++k) {
      const auto rep = hypothesis_check(n, k, 2.0, 2001, o.jobs);
      log.check(rep.verdict == "pass",
                fmt("p=2 n=%d k=%d: max at %.4f, d2(1/2) = %.3e, nearest local max global: %s", n, k,
                    rep.global_max_at.empty() ? -1.0 : rep.global_max_at.front(), rep.second_difference_at_half,
                    rep.nearest_local_max_is_global ? "yes" : "no"));
    }
  }
  for (int n = 1; n <= 5; ++n) {
    const auto rep = hypothesis_check(n, n - 1, kInf, 2001, o.jobs);
    std::string at;
    for (double x : rep.global_max_at) at += fmt(" %.4f", x);
    log.check(rep.verdict == "pass", fmt("p=inf n=%d k=%d: max %.9f at%s (%s)", n, n - 1, rep.global_max, at.c_str(),
                                         rep.expectation.c_str()));
  }
}

}  // namespace detail

inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts,
                                                   const std::function<void(const CriterionResult&)>& on_done = {}) {
  struct Entry {
    int id;
    const char* title;
    void (*fn)(detail::CriterionLog&, const VerifyOptions&);
  };
  const Entry entries[] = {
      {1, "closed-form lambda, odd n", detail::criterion_odd},
      {2, "closed-form lambda, even n", detail::criterion_even},
      {3, "local maxima for n = 3", detail::criterion_local_maxima},
      {4, "p = 1 constants", detail::criterion_p_one},
      {5, "p = 2 oracle equivalence", detail::criterion_p_two},
      {6, "functional identity", detail::criterion_identity},
      {7, "optimality conditions", detail::criterion_optimality},
      {8, "hypothesis reproduction", detail::criterion_hypothesis},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), e.id) == opts.only.end()) continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    const auto t0 = std::chrono::steady_clock::now();
    detail::CriterionLog log(r);
    try {
      e.fn(log, opts);
    } catch (const std::exception& ex) {
      log.check(false, std::string("exception: ") + ex.what());
    }
    r.seconds = detail::seconds_since(t0);
    if (on_done) on_done(r);
    out.push_back(std::move(r));
  }
  return out;
}

/// One line per criterion: "PASS  3  local maxima for n = 3  (4.2 s)".
inline std::string summary_line(const CriterionResult& r) {
  return detail::fmt("%s  %d  %s  (%.1f s)", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
}

inline nlohmann::json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"seconds", r.seconds}, {"details", r.details}});
  }
  return {{"schema", kSchemaVersion}, {"kind", "verify"}, {"seed", seed}, {"passed", all}, {"criteria", arr}};
}

}  // namespace sharpconst
