#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "collent/quadrature.hpp"

using namespace collent;

TEST(Adaptive, PolynomialsAreExact) {
  const auto r = quad::integrate_adaptive([](double x) { return x * x * x - 2 * x; }, -1.0, 3.0,
                                          1e-13);
  EXPECT_NEAR(r.value, (81.0 / 4 - 9.0) - (1.0 / 4 - 1.0), 1e-12);
}

TEST(Adaptive, OscillatoryIntegrand) {
  const auto r = quad::integrate_adaptive([](double x) { return std::cos(40.0 * x) * x; }, 0.0,
                                          5.0, 1e-12, 40);
  const double exact = (5.0 * std::sin(200.0) / 40.0) + (std::cos(200.0) - 1.0) / 1600.0;
  EXPECT_NEAR(r.value, exact, 1e-12);
}

TEST(Adaptive, EndpointSingularityRefines) {
  const auto r = quad::integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-11);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
  EXPECT_GT(r.segments, 10u);
}

TEST(Adaptive, SegmentCapRaisesQuadratureError) {
  EXPECT_THROW(quad::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0,
                                        1.0, 1e-15, 1, 50),
               QuadratureError);
}

TEST(SineCosineIntegrals, ReferenceValues) {
  // Abramowitz & Stegun table 5.1.
  auto v = quad::sine_cosine_integrals(1.0);
  EXPECT_NEAR(v.si, 0.946083070367183, 1e-14);
  EXPECT_NEAR(v.ci, 0.337403922900968, 1e-14);
  v = quad::sine_cosine_integrals(5.0);
  EXPECT_NEAR(v.si, 1.549931244944674, 1e-14);
  EXPECT_NEAR(v.ci, -0.190029749656644, 1e-14);
  v = quad::sine_cosine_integrals(2.0);
  EXPECT_NEAR(v.si, 1.605412976802695, 1e-14);
  EXPECT_NEAR(v.ci, 0.422980828774865, 1e-14);
  EXPECT_THROW(quad::sine_cosine_integrals(0.0), DomainError);
}

TEST(SineCosineIntegrals, ContinuityAtBranchSwitch) {
  const auto below = quad::sine_cosine_integrals(2.0 - 1e-12);
  const auto above = quad::sine_cosine_integrals(2.0 + 1e-12);
  EXPECT_NEAR(below.si, above.si, 1e-12);
  EXPECT_NEAR(below.ci, above.ci, 1e-12);
}

TEST(SineCosineIntegrals, LargeArgumentAsymptotics) {
  const double x = 400.0;
  const auto v = quad::sine_cosine_integrals(x);
  // Ci ~ sin x / x - cos x / x^2, Si ~ pi/2 - cos x / x - sin x / x^2
  EXPECT_NEAR(v.ci, std::sin(x) / x - std::cos(x) / (x * x), 1e-7);
  EXPECT_NEAR(v.si, std::numbers::pi / 2 - std::cos(x) / x - std::sin(x) / (x * x), 1e-7);
}

TEST(CosineTail, AgreesWithDirectQuadrature) {
  const double a = 3.0, k0 = 25.0;
  for (int n : {1, 2, 3, 5, 7}) {
    // Truncate at 4000 and add the first two terms of the asymptotic remainder.
    const double upper = 4000.0;
    auto f = [&](double k) { return std::cos(a * k) / std::pow(k, n); };
    double direct = quad::integrate_adaptive(f, k0, upper, 1e-14, 6000).value;
    direct += -std::sin(a * upper) / (a * std::pow(upper, n)) +
              n * std::cos(a * upper) / (a * a * std::pow(upper, n + 1));
    EXPECT_NEAR(quad::cosine_tail(a, k0, n), direct, 5e-12) << n;
  }
}

TEST(CosineTail, ExpansionMatchesCosineIntegral) {
  // The n = 1 tail is -Ci; for n = 3 the integration-by-parts identity
  //   T_3 = cos(aK)/(2K^2) - (a/2)[sin(aK)/K + a T_1]
  // links both routes.
  const double a = 2.0, k0 = 50.0;
  const double t1 = quad::cosine_tail(a, k0, 1);
  const double t3 = std::cos(a * k0) / (2 * k0 * k0) - 0.5 * a * (std::sin(a * k0) / k0 + a * t1);
  EXPECT_NEAR(quad::cosine_tail(a, k0, 3), t3, 1e-13);
  EXPECT_THROW(quad::cosine_tail(0.1, 10.0, 3), QuadratureError);
}
