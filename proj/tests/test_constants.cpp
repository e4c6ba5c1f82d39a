#include "sharpconst/constants.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace sharpconst;

TEST(AValue, Examples) {
  EXPECT_NEAR(A_value({1, 0, kInf, 0.5}), 0.5, 1e-10);
  EXPECT_NEAR(A_value({1, 0, 2.0, 0.25}), std::sqrt(0.1875), 1e-14);
  EXPECT_NEAR(A_value({1, 0, 1.0, 0.3}), 0.5, 1e-12);
  EXPECT_THROW(A_value({2, 2, 2.0, 0.5}), DomainError);
  EXPECT_THROW(A_value({2, 1, 2.0, 1.0}), DomainError);
  EXPECT_THROW(A_value({2, 1, 0.5, 0.5}), DomainError);
}

TEST(AProfile, FirstOrderExamples) {
  const auto rows = A_profile(1, 0, kInf, 5);
  ASSERT_EQ(rows.size(), 5U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_NEAR(rows[i].a, (i + 1) / 6.0, 1e-15);
    EXPECT_NEAR(rows[i].A, std::min(rows[i].a, 1.0 - rows[i].a), 1e-10);
    ASSERT_TRUE(rows[i].B.has_value());
  }
  for (const auto& r : A_profile(1, 0, 1.0, 7)) {
    EXPECT_NEAR(r.A, 0.5, 1e-12);
    EXPECT_FALSE(r.B.has_value());
  }
}

TEST(AProfile, ReflectionSymmetry) {
  const auto rows = A_profile(2, 1, 2.0, 9);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_NEAR(rows[i].A, rows[rows.size() - 1 - i].A, 1e-9);
  const auto r3 = A_profile(3, 1, 3.0, 7);
  for (std::size_t i = 0; i < r3.size(); ++i) EXPECT_NEAR(r3[i].A, r3[r3.size() - 1 - i].A, 1e-7);
}

TEST(AProfile, ThreadedMatchesSerial) {
  const auto a = A_profile(3, 2, kInf, 11, 1);
  const auto b = A_profile(3, 2, kInf, 11, 3);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].A, b[i].A);
}

TEST(EnvelopeB, Examples) {
  EXPECT_NEAR(envelope_B(1, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(envelope_B(3, 0.5), 0.2071068, 1e-7);
  EXPECT_EQ(envelope_B(3, 0.0), 0.0);
  EXPECT_THROW(envelope_B(3, 1.5), DomainError);
}

TEST(LocalMaxPoints, Examples) {
  EXPECT_NEAR(local_max_points(1).at(0), 0.5, 1e-15);
  const auto p3 = local_max_points(3);
  EXPECT_NEAR(p3[0], 0.1464466, 1e-7);
  EXPECT_NEAR(p3[1], 0.5, 1e-15);
  EXPECT_NEAR(p3[2], 0.8535534, 1e-7);
  const auto p4 = local_max_points(4);
  EXPECT_NEAR(p4[1] + p4[2], 1.0, 1e-15);
  for (std::size_t i = 1; i < p4.size(); ++i) EXPECT_LT(p4[i - 1], p4[i]);
}

TEST(ClosedFormLambda, Examples) {
  const auto a = closed_form_lambda(2, 1, kInf);
  ASSERT_TRUE(a);
  EXPECT_NEAR(a->value, 0.25, 1e-15);
  EXPECT_FALSE(a->is_bound);
  EXPECT_NEAR(closed_form_lambda(3, 2, kInf)->value, 0.5 * std::tan(std::numbers::pi / 8), 1e-15);
  EXPECT_NEAR(closed_form_lambda(4, 3, kInf)->value, 0.1545085, 1e-7);
  EXPECT_EQ(closed_form_lambda(5, 4, 1.0)->value, 0.5);
  const auto b = closed_form_lambda(3, 0, 1.0);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->value, 0.25);
  EXPECT_TRUE(b->is_bound);
  EXPECT_FALSE(closed_form_lambda(3, 1, 2.0));
  EXPECT_FALSE(closed_form_lambda(3, 1, kInf));
}

TEST(ExactA2, Examples) {
  EXPECT_EQ(exact_A2(1, 0, Rational(1, 2)), Rational(1, 4));
  EXPECT_EQ(exact_A2(1, 0, Rational(1, 3)), Rational(2, 9));
}

TEST(ExactA2, AgreesWithSolver) {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n; ++k) {
      for (int i = 1; i <= 9; ++i) {
        const double exact = std::sqrt(to_double(exact_A2(n, k, Rational(i, 10))));
        const double solver = best_approx_smooth(kernel_g_deriv_n(n, k, i / 10.0), n - 1, 2.0).value;
        EXPECT_NEAR(solver, exact, 1e-11 * exact) << n << ' ' << k << ' ' << i;
      }
    }
  }
}

TEST(SeriesA2, MonotoneAndBounded) {
  const double exact = to_double(exact_A2(2, 1, Rational(1, 2)));
  double prev = 0.0;
  for (int M = 2; M <= 200; ++M) {
    const double s = series_A2(2, 1, 0.5, M);
    EXPECT_GE(s, prev);
    EXPECT_LE(s, exact * (1.0 + 1e-14));
    prev = s;
  }
  EXPECT_NEAR(series_A2(1, 0, 0.5, 1), 0.1875, 1e-15);
  EXPECT_THROW(series_A2(3, 1, 0.5, 2), DomainError);
}

TEST(SeriesA2, ConvergesToExact) {
  EXPECT_LE(std::fabs(series_A2(3, 1, 0.4, 200) - to_double(exact_A2(3, 1, Rational(2, 5)))), 1e-6);
}

TEST(LambdaConstant, OddAndEvenClosedForms) {
  const auto l1 = lambda_constant(1, 0, kInf);
  EXPECT_NEAR(l1.optimized, 0.5, 1e-5);
  EXPECT_NEAR(l1.argmax_a, 0.5, 1e-4);
  const auto l2 = lambda_constant(2, 1, kInf);
  EXPECT_NEAR(l2.optimized, 0.25, 1e-5);
  const double s = std::sin(std::numbers::pi * 2 / 12);
  EXPECT_TRUE(std::fabs(l2.argmax_a - s * s) < 1e-4 || std::fabs(l2.argmax_a - (1 - s * s)) < 1e-4);
  EXPECT_EQ(l2.method, "closed-form");
  EXPECT_FALSE(l2.disagreement);
}

TEST(LambdaConstant, FirstOrderPEqualsOne) {
  const auto r = lambda_constant(2, 1, 1.0);
  EXPECT_NEAR(r.optimized, 0.5, 1e-6);
  EXPECT_TRUE(r.closed_form_available);
}

TEST(LambdaConstant, BoundIsNotAsserted) {
  const auto r = lambda_constant(3, 0, 1.0);
  ASSERT_TRUE(r.closed_form);
  EXPECT_TRUE(r.closed_form->is_bound);
  EXPECT_FALSE(r.closed_form_available);
  EXPECT_EQ(r.method, "optimized");
  EXPECT_LE(r.optimized, r.closed_form->value + 1e-6);
}

TEST(ExtremalWitness, PEqualsTwo) {
  const auto w = extremal_witness({2, 0, 2.0, 0.5});
  EXPECT_NEAR(w.ratio, lq_norm(kernel_g_deriv_n(2, 0, 0.5), 2.0), 1e-10);
}

TEST(ExtremalWitness, RatioMatchesA) {
  for (double p : {1.5, 3.0, 4.0}) {
    for (int n = 1; n <= 3; ++n) {
      for (int k = 0; k < n; ++k) {
        const ProblemSpec spec{n, k, p, 0.3};
        const auto w = extremal_witness(spec);
        const double A = A_value(spec);
        EXPECT_NEAR(w.ratio, A, 1e-7 * A) << p << ' ' << n << ' ' << k;
      }
    }
  }
}

TEST(ExtremalWitness, MomentsVanish) {
  const auto w = extremal_witness({2, 1, 1.5, 0.3});
  for (double m : w.moments) EXPECT_LE(std::fabs(m), 1e-9);
  EXPECT_THROW(extremal_witness({2, 1, 1.0, 0.3}), DomainError);
  EXPECT_THROW(extremal_witness({2, 1, kInf, 0.3}), DomainError);
}

TEST(HolderConsistency, WitnessAgainstRandomNu) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double p : {1.5, 3.0}) {
    const ProblemSpec spec{3, 1, p, 0.45};
    const auto w = extremal_witness(spec);
    for (int trial = 0; trial < 10; ++trial) {
      NuVector<double> nu{{u(rng), u(rng), u(rng)}};
      const double bound = w.top_norm * lq_norm(build_Q(spec, nu), spec.q());
      EXPECT_LE(std::fabs(w.derivative_at_a), bound + 1e-9);
    }
  }
}

TEST(EnvelopeTouch, LocalMaxima) {
  for (int n = 1; n <= 5; ++n) {
    for (double a : local_max_points(n)) {
      EXPECT_NEAR(A_value({n, n - 1, kInf, a}), envelope_B(n, a), 1e-6) << n << ' ' << a;
    }
  }
}

TEST(EnvelopeDomination, Grid) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& row : A_profile(n, n - 1, kInf, 51)) EXPECT_LE(row.A, *row.B + 1e-6) << n << ' ' << row.a;
  }
}

TEST(HypothesisCheck, Examples) {
  const auto odd = hypothesis_check(3, 2, kInf);
  EXPECT_EQ(odd.verdict, "pass");
  ASSERT_FALSE(odd.global_max_at.empty());
  EXPECT_NEAR(odd.global_max_at.front(), 0.5, 1e-3);
  const auto p2 = hypothesis_check(2, 1, 2.0);
  EXPECT_GT(p2.second_difference_at_half, 0.0);
  EXPECT_EQ(p2.verdict, "pass");
  const auto info = hypothesis_check(1, 0, 3.0, 2001);
  EXPECT_EQ(info.verdict, "informational");
  EXPECT_THROW(hypothesis_check(2, 0, 2.0, 101), DomainError);
}
