#include "sharpconst/kernels.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sharpconst;

namespace {

using RPoly = Polynomial<Rational>;
using DPoly = Polynomial<double>;
using RPiece = PiecewisePolynomial<Rational>;
using DPiece = PiecewisePolynomial<double>;

Rational q(long p, long d = 1) { return Rational(p, d); }

// Random combination of P_n .. P_{n+extra}, which is orthogonal to polynomials of degree < n.
RPoly legendre_tail(std::mt19937& rng, int n, int extra) {
  std::uniform_int_distribution<int> num(-9, 9);
  RPoly h;
  for (int m = n; m <= n + extra; ++m) h += legendre(m) * Rational(num(rng), 4);
  return h;
}

NuVector<Rational> random_nu(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-30, 30);
  NuVector<Rational> nu;
  for (int i = 0; i < n; ++i) nu.values.push_back(Rational(num(rng), 7));
  return nu;
}

}  // namespace

TEST(HPoly, Examples) {
  for (const Rational a : {q(1, 10), q(1, 2), q(7, 9)}) EXPECT_EQ(h_poly(1, 0, a), RPoly({q(1)}));
  EXPECT_EQ(h_poly(2, 1, q(1, 2)), RPoly({q(1, 2), q(-1)}));
  EXPECT_LE(h_poly(4, 2, q(3, 10)).degree(), 3);
  EXPECT_THROW(h_poly(3, 3, q(1, 2)), DomainError);
  EXPECT_THROW(h_poly(3, -1, q(1, 2)), DomainError);
}

TEST(KernelG, FirstOrderPieces) {
  const Rational a = q(3, 10);
  const RPiece g = kernel_g(1, 0, a);
  EXPECT_EQ(g.piece(0), RPoly({q(0), q(7, 10)}));
  EXPECT_EQ(g.piece(1), RPoly({q(3, 10), q(-3, 10)}));
}

TEST(KernelG, DirichletConditions) {
  const RPiece g = kernel_g(3, 1, q(2, 5));
  for (int j = 0; j <= 2; ++j) {
    const RPiece d = g.derivative(j);
    EXPECT_EQ(d(q(0)), q(0)) << j;
    EXPECT_EQ(d.limits(q(1)).left, q(0)) << j;
  }
}

TEST(KernelG, SmoothnessAtKnot) {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < n; ++k) {
      const Rational a(3, 7);
      const RPiece g = kernel_g(n, k, a);
      for (int j = 0; j <= 2 * n - k - 2; ++j) EXPECT_EQ(g.derivative(j).limits(a).jump, q(0)) << n << k << j;
      EXPECT_NE(g.derivative(2 * n - k - 1).limits(a).jump, q(0));
    }
  }
}

TEST(KernelG, ReproducingExample) {
  const RPoly f = pow(RPoly({q(0), q(1), q(-1)}), 2);  // x^2 (1-x)^2
  const RPiece g2 = kernel_g_deriv_n(2, 0, q(1, 2));
  EXPECT_EQ(exact_integral(RPiece(f.derivative(2)) * g2), q(1, 16));
}

TEST(KernelG, ReproducingProperty) {
  std::mt19937 rng(5);
  for (int n = 1; n <= 5; ++n) {
    const RPoly bubble = pow(RPoly({q(0), q(1), q(-1)}), static_cast<unsigned>(n));
    for (int k = 0; k < n; ++k) {
      for (int trial = 0; trial < 3; ++trial) {
        const RPoly f = bubble * RPoly({Rational(static_cast<int>(rng() % 7) - 3), Rational(static_cast<int>(rng() % 5) + 1)});
        const Rational a(static_cast<int>(rng() % 9) + 1, 10);
        const Rational lhs = exact_integral(RPiece(f.derivative(n)) * kernel_g_deriv_n(n, k, a));
        EXPECT_EQ(lhs, f.derivative(k)(a)) << n << ' ' << k;
      }
    }
  }
}

TEST(KernelGDerivN, StepForFirstOrder) {
  const DPiece d = kernel_g_deriv_n(1, 0, 0.3);
  EXPECT_NEAR(d(0.1), 0.7, 1e-15);
  EXPECT_NEAR(d(0.8), -0.3, 1e-15);
}

TEST(KernelGDerivN, UnitJumpForTopOrder) {
  EXPECT_EQ(kernel_g_deriv_n(4, 3, q(1, 5)).limits(q(1, 5)).jump, q(1));
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(kernel_g_deriv_n(n, n - 1, q(5, 11)).limits(q(5, 11)).jump, q(1)) << n;
}

TEST(KernelGDerivN, OrthogonalToLowDegree) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k < n; ++k) {
      const RPiece d = kernel_g_deriv_n(n, k, q(37, 100));
      EXPECT_LE(d.max_degree(), n - 1);
      for (int j = 0; j < n; ++j) EXPECT_EQ(exact_integral(d * RPoly::monomial(j)), q(0)) << n << k << j;
    }
  }
}

TEST(SplineS, Examples) {
  const RPiece chi = spline_S(3, 2, q(2, 5));
  EXPECT_EQ(chi.piece(0), RPoly({q(1)}));
  EXPECT_TRUE(chi.piece(1).is_zero());
  EXPECT_EQ(spline_S(2, 0, q(1, 2))(q(0)), q(1, 2));
  EXPECT_EQ(spline_S(4, 1, q(1, 2))(q(3, 4)), q(0));
}

TEST(BuildQ, FirstOrder) {
  const RPiece Q = build_Q(1, 0, q(3, 10), NuVector<Rational>{{q(-1, 2)}});
  EXPECT_EQ(Q.piece(0), RPoly({q(1, 2)}));
  EXPECT_EQ(Q.piece(1), RPoly({q(-1, 2)}));
}

TEST(BuildQ, WrongNuLength) {
  EXPECT_THROW(build_Q(3, 1, q(1, 2), NuVector<Rational>{{q(1), q(2)}}), DomainError);
  EXPECT_THROW(build_Q(ProblemSpec{2, 0, 2.0, 0.5}, NuVector<double>{{1.0}}), DomainError);
}

TEST(BuildQ, JumpEqualsSpline) {
  std::mt19937 rng(17);
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k < n; ++k) {
      const Rational a(static_cast<int>(rng() % 19) + 1, 20);
      const RPiece Q = build_Q(n, k, a, random_nu(rng, n));
      EXPECT_LE(Q.max_degree(), n - 1);
      EXPECT_EQ(Q.piece(0) - Q.piece(1), spline_S(n, k, a).piece(0)) << n << ' ' << k;
    }
  }
}

TEST(BuildQ, ShiftParametrization) {
  std::mt19937 rng(3);
  for (int n = 1; n <= 6; ++n) {
    const Rational a(3, 5);
    const RPoly shift = legendre_tail(rng, 0, n - 1);
    const RPiece base = build_Q(n, n / 2, a, NuVector<Rational>{std::vector<Rational>(static_cast<std::size_t>(n), q(0))});
    const RPiece moved = build_Q(n, n / 2, a, nu_for_shift(n, a, shift));
    EXPECT_EQ(moved - base, RPiece(shift).refine({a})) << n;
  }
}

TEST(BuildQ, KernelIsMemberOfFamily) {
  // g^{(n)} = Q(0) + u for some u of degree < n: the difference has no Legendre content at index >= n.
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k < n; ++k) {
      const Rational a(2, 7);
      const RPiece diff = kernel_g_deriv_n(n, k, a) -
                          build_Q(n, k, a, NuVector<Rational>{std::vector<Rational>(static_cast<std::size_t>(n), q(0))});
      EXPECT_EQ(diff.limits(a).jump, q(0));
      EXPECT_EQ(diff.piece(0), diff.piece(1)) << n << ' ' << k;
      EXPECT_LE(diff.piece(0).degree(), n - 1);
    }
  }
}

TEST(LegendreCoeffsOfG, MatchesProjection) {
  const Rational a = q(1, 2);
  const RPiece d = kernel_g_deriv_n(2, 1, a);
  const auto alpha = legendre_coeffs_of_g(2, 1, a, 6);
  for (int m = 2; m <= 6; ++m) {
    EXPECT_EQ(exact_integral(d * legendre(m)) * (2 * m + 1), alpha[static_cast<std::size_t>(m - 2)]) << m;
  }
  const RPiece d3 = kernel_g_deriv_n(3, 0, q(1, 4));
  for (int m = 0; m < 3; ++m) EXPECT_EQ(exact_integral(d3 * legendre(m)), q(0));
}

TEST(LegendreCoeffsOfG, FirstCoefficient) {
  EXPECT_EQ(legendre_coeffs_of_g(1, 0, q(1, 2), 1).at(0), q(-3, 4));
  EXPECT_NEAR(legendre_coeffs_of_g(1, 0, 0.5, 1).at(0), -0.75, 1e-15);
  EXPECT_THROW(legendre_coeffs_of_g(3, 0, 0.5, 2), DomainError);
}

TEST(LegendreCoeffsOfG, FloatMatchesExact) {
  const auto exact = legendre_coeffs_of_g(4, 1, q(3, 10), 40);
  const auto flt = legendre_coeffs_of_g(4, 1, 0.3, 40);
  for (std::size_t i = 0; i < exact.size(); ++i) EXPECT_NEAR(flt[i], to_double(exact[i]), 1e-13) << i;
}

TEST(TestFunction, LegendreTopDerivative) {
  const auto y = test_function_from(RPiece(legendre(3)), 3);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(y.value(j, q(0)), q(0));
    EXPECT_EQ(y.value(j, q(1)), q(0));
  }
  EXPECT_EQ(y.derivative(3), RPiece(legendre(3)));
}

TEST(TestFunction, FirstOrder) {
  const auto y = test_function_from(RPiece(legendre(1)), 1);
  EXPECT_EQ(y.derivative(0), RPiece(RPoly({q(0), q(-1), q(1)})));
}

TEST(TestFunction, RejectsMomentViolation) {
  try {
    test_function_from(RPiece(RPoly({q(1)})), 1);
    FAIL() << "expected rejection";
  } catch (const MomentViolation& e) {
    EXPECT_EQ(e.index(), 0);
  }
  try {
    test_function_from(DPiece(legendre<double>(2)), 3);
    FAIL() << "expected rejection";
  } catch (const MomentViolation& e) {
    EXPECT_EQ(e.index(), 2);
  }
}

TEST(FunctionalIdentity, ExactForRandomCases) {
  std::mt19937 rng(42);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n; ++k) {
      for (int ai = 1; ai <= 9; ++ai) {
        const Rational a(ai, 10);
        // Piecewise h: Legendre tail on each side plus a matched knot component keeps the moments zero.
        const RPoly tail = legendre_tail(rng, n, 3);
        const RPiece h = RPiece(tail) + (kernel_g_deriv_n(n, k, a) * Rational(static_cast<int>(rng() % 5) - 2));
        const auto y = test_function_from(h, n);
        const RPiece Q = build_Q(n, k, a, random_nu(rng, n));
        EXPECT_EQ(exact_integral(h * Q), y.value(k, a)) << n << ' ' << k << ' ' << ai;
      }
    }
  }
}

TEST(FunctionalIdentity, FloatWithinTolerance) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < n; ++k) {
      for (int ai = 1; ai <= 9; ++ai) {
        const double a = ai / 10.0;
        DPoly tail;
        for (int m = n; m <= n + 4; ++m) tail += legendre<double>(m) * u(rng);
        const DPiece h = DPiece(tail) + kernel_g_deriv_n(n, k, a) * u(rng);
        const auto y = test_function_from(h, n, 1e-11);
        NuVector<double> nu;
        for (int i = 0; i < n; ++i) nu.values.push_back(u(rng));
        const DPiece Q = build_Q(ProblemSpec{n, k, 2.0, a}, nu);
        const double yk = y.value(k, a);
        EXPECT_LE(std::fabs(yk - integrate_product(h, Q)), 1e-10 * (1.0 + std::fabs(yk)));
      }
    }
  }
}

TEST(TaylorIdentity, LeftAndRightIntegrals) {
  std::mt19937 rng(12);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < n; ++k) {
      const Rational a(3, 8);
      const RPiece h = RPiece(legendre_tail(rng, n, 2)) + kernel_g_deriv_n(n, k, a);
      const auto y = test_function_from(h, n);
      const int e = n - k - 1;
      const RPoly kern = pow(RPoly::linear(a, q(-1)), static_cast<unsigned>(e)) / Rational(factorial(e));
      const Rational left = exact_integral(h * kern, q(0), a);
      const Rational right = -exact_integral(h * kern, a, q(1));
      EXPECT_EQ(left, y.value(k, a));
      EXPECT_EQ(right, y.value(k, a));
    }
  }
}

TEST(QuadratureTestFunction, MatchesPiecewiseConstruction) {
  const DPiece h = DPiece(legendre<double>(3)) + kernel_g_deriv_n(2, 1, 0.4);
  const auto exact = test_function_from(h, 2);
  const QuadratureTestFunction quad([&](double t) { return h(t); }, {0.0, 0.4, 1.0}, 2);
  for (int j = 0; j <= 2; ++j) {
    for (double x : {0.1, 0.4, 0.77}) EXPECT_NEAR(quad.value(j, x), exact.value(j, x), 1e-13);
  }
  for (double m : quad.moments()) EXPECT_NEAR(m, 0.0, 1e-13);
  EXPECT_NEAR(quad.top_norm(2.0), lq_norm(h, 2.0), 1e-13);
}
