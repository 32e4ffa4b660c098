#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "uqtb/error.h"
#include "uqtb/quadrature.h"

namespace uqtb {
namespace {

TEST(GaussLegendre, WeightsSumToTwo)
{
  for (int n : {1, 2, 5, 16, 33, 64, 128}) {
    const auto& rule = gauss_legendre(n);
    ASSERT_EQ(rule.order(), static_cast<std::size_t>(n));
    const double sum =
      std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    EXPECT_NEAR(sum, 2.0, 1e-13) << "n = " << n;
  }
}

TEST(GaussLegendre, NodesAscendingAndSymmetric)
{
  const auto& rule = gauss_legendre(17);
  for (std::size_t i = 0; i + 1 < rule.order(); ++i)
    EXPECT_LT(rule.nodes[i], rule.nodes[i + 1]);
  for (std::size_t i = 0; i < rule.order(); ++i) {
    EXPECT_NEAR(rule.nodes[i], -rule.nodes[rule.order() - 1 - i], 1e-15);
    EXPECT_GT(rule.weights[i], 0.0);
  }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1)
{
  for (int n : {3, 8, 16, 24}) {
    const auto& rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.order(); ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(sum, exact, 1e-13) << "n = " << n << ", degree " << k;
    }
  }
}

TEST(GaussLegendre, RejectsNonPositiveOrder)
{
  EXPECT_THROW(gauss_legendre(0), DomainError);
}

TEST(QuadratureRule, MappedRuleIntegratesOnInterval)
{
  const auto rule = gauss_legendre(10).mapped(1.0, 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.order(); ++i)
    sum += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
  EXPECT_NEAR(sum, 26.0 / 3.0, 1e-13);
}

TEST(Adaptive, SmoothIntegrand)
{
  const double v = integrate_adaptive_scalar(
    [](double x) { return std::exp(x) * std::cos(3.0 * x); }, 0.0, 2.0);
  const double exact =
    (std::exp(2.0) * (std::cos(6.0) + 3.0 * std::sin(6.0)) - 1.0) / 10.0;
  EXPECT_NEAR(v, exact, 1e-12 * std::abs(exact));
}

TEST(Adaptive, EndpointSingularityRefines)
{
  AdaptiveOptions opts{16, 1e-10, 1e-15, 1024};
  const double v = integrate_adaptive_scalar(
    [](double x) { return std::sqrt(x); }, 0.0, 1.0, opts);
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-9);
}

TEST(Adaptive, VectorComponentsIndependent)
{
  std::vector<double> out(3);
  integrate_adaptive(
    [](double x, std::span<double> v) {
      v[0] = 1.0;
      v[1] = x;
      v[2] = std::sin(x);
    },
    0.0, std::acos(-1.0), out);
  EXPECT_NEAR(out[0], std::acos(-1.0), 1e-13);
  EXPECT_NEAR(out[1], 0.5 * std::acos(-1.0) * std::acos(-1.0), 1e-12);
  EXPECT_NEAR(out[2], 2.0, 1e-13);
}

TEST(Adaptive, PanelCapThrows)
{
  AdaptiveOptions opts{4, 1e-15, 0.0, 8};
  EXPECT_THROW(integrate_adaptive_scalar(
                 [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts),
               ConvergenceError);
}

TEST(Adaptive, Deterministic)
{
  const auto f = [](double x) { return std::log1p(x * x) / (1.0 + x); };
  const double a = integrate_adaptive_scalar(f, 0.0, 7.0);
  const double b = integrate_adaptive_scalar(f, 0.0, 7.0);
  EXPECT_EQ(a, b);
}

} // namespace
} // namespace uqtb
