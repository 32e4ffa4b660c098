#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.h"
#include "uqtb/error.h"
#include "uqtb/kernels.h"

namespace uqtb {
namespace {

using std::numbers::pi;

TEST(SimilarityPoint, Fields)
{
  const SimilarityPoint pt(0.3, 1.5);
  EXPECT_EQ(pt.eta(), 0.3 / 1.5);
  EXPECT_TRUE(pt.inside_wavefront());
  ASSERT_TRUE(pt.q().has_value());
  EXPECT_DOUBLE_EQ(*pt.q(), (1.0 + 0.2) / (1.0 - 0.2));
  EXPECT_FALSE(SimilarityPoint(2.0, 1.0).q().has_value());
}

TEST(SimilarityPoint, RejectsNonPositiveTime)
{
  EXPECT_THROW(SimilarityPoint(0.0, 0.0), DomainError);
  EXPECT_THROW(SimilarityPoint(0.0, -1.0), DomainError);
  EXPECT_THROW(SimilarityPoint(0.0, std::nan("")), DomainError);
}

TEST(FluxValue, TotalIsSum)
{
  const FluxValue f{0.25, 0.5};
  EXPECT_EQ(f.total(), 0.75);
}

TEST(UncollidedPlane, Examples)
{
  EXPECT_NEAR(uncollided_plane({0.5, 1.0}), std::exp(-1.0) / 2.0, 1e-16);
  EXPECT_EQ(uncollided_plane({2.0, 1.0}), 0.0);
  EXPECT_NEAR(uncollided_plane({0.0, 5.0}), std::exp(-5.0) / 10.0, 1e-18);
}

TEST(CollidedPlane, ZeroScatteringGivesZero)
{
  EXPECT_EQ(collided_plane({0.3, 2.0}, 0.0), 0.0);
}

TEST(CollidedPlane, ZeroOutsideWavefront)
{
  EXPECT_EQ(collided_plane({1.2, 1.0}, 0.7), 0.0);
  EXPECT_EQ(collided_plane({1.2, 1.0}, 1.3), 0.0);
}

TEST(CollidedPlane, MatchesSecantFormOracle)
{
  for (auto [x, t, c] : {std::tuple{0.0, 1.0, 1.0}, {0.5, 1.0, 0.7},
                         {-2.0, 5.0, 1.25}, {0.0, 5.0, 0.5}, {2.9, 3.0, 1.4}}) {
    const double got = collided_plane({x, t}, c);
    const double want = oracle::collided_plane_sec2(x, t, c, 32, 64);
    EXPECT_NEAR(got, want, 1e-10 * std::abs(want))
      << "x=" << x << " t=" << t << " c=" << c;
  }
}

TEST(CollidedPlane, BatchMatchesScalar)
{
  const std::vector<double> c{0.2, 0.9, 1.0, 1.35};
  std::vector<double> out(c.size());
  const SimilarityPoint pt(-0.8, 2.0);
  collided_plane(pt, c, out);
  for (std::size_t k = 0; k < c.size(); ++k)
    EXPECT_NEAR(out[k], collided_plane(pt, c[k]), 1e-13 * std::abs(out[k]));
}

TEST(CollidedPlane, BatchRejectsMismatchAndNegativeC)
{
  std::vector<double> c{1.0, 1.0};
  std::vector<double> out(1);
  EXPECT_THROW(collided_plane({0.0, 1.0}, c, out), DomainError);
  EXPECT_THROW(collided_plane({0.0, 1.0}, -0.5), DomainError);
}

TEST(Kernels, CausalityAtRandomPointsOutsideWavefront)
{
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> time(0.05, 8.0);
  std::uniform_real_distribution<double> beyond(1e-9, 5.0);
  std::uniform_real_distribution<double> ratio(0.0, 1.5);
  for (int i = 0; i < 100; ++i) {
    const double t = time(rng);
    const double r = t + beyond(rng);
    const double c = ratio(rng);
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    EXPECT_EQ(uncollided_plane({sign * r, t}), 0.0);
    EXPECT_EQ(collided_plane({sign * r, t}, c), 0.0);
    const FluxValue pt = point_source_flux(r, t, c);
    EXPECT_EQ(pt.total(), 0.0);
    const FluxValue line = line_source_flux(r, t, c);
    EXPECT_EQ(line.total(), 0.0);
  }
}

TEST(CollidedPlane, SlabSymmetry)
{
  for (double t : {0.5, 1.0, 5.0})
    for (double eta : {0.1, 0.45, 0.9, 0.999})
      for (double c : {0.5, 1.0, 1.4}) {
        const double a = collided_plane({eta * t, t}, c);
        const double b = collided_plane({-eta * t, t}, c);
        EXPECT_NEAR(a, b, 1e-13);
      }
}

TEST(CollidedPlane, IncreasingInScatteringRatio)
{
  for (auto [x, t] : {std::pair{0.0, 1.0}, {0.5, 1.0}, {4.0, 5.0}, {-2.5, 3.0}}) {
    double previous = 0.0;
    for (double c = 0.05; c <= 1.6; c += 0.05) {
      const double v = collided_plane({x, t}, c);
      EXPECT_GT(v, previous) << "x=" << x << " t=" << t << " c=" << c;
      previous = v;
    }
  }
}

TEST(CollidedPlane, VanishesAtWavefront)
{
  const double eta = 1.0 - 1e-8;
  EXPECT_LT(std::abs(collided_plane({eta, 1.0}, 1.0)), 1e-6);
  EXPECT_LT(std::abs(collided_plane({-eta, 1.0}, 1.0)), 1e-6);
  EXPECT_EQ(collided_plane({1.0 - 1e-13, 1.0}, 1.0), 0.0);
}

TEST(CollidedPlane, DoublingOrderChangesLittle)
{
  KernelOptions doubled;
  doubled.quadrature.order = 128;
  for (auto [x, t, c] : {std::tuple{0.0, 1.0, 1.0}, {0.7, 1.0, 0.5},
                         {3.0, 5.0, 1.2}, {-4.9, 5.0, 1.0}, {0.1, 0.2, 1.4}}) {
    const double a = collided_plane({x, t}, c);
    const double b = collided_plane({x, t}, c, doubled);
    EXPECT_LT(std::abs(a - b), 1e-10) << "x=" << x << " t=" << t;
  }
}

TEST(CollidedPlane, IntegrandFiniteNearUpperEndpoint)
{
  for (double eta : {0.0, 0.3, 0.95})
    for (double gap : {1e-12, 1e-14, 0.0}) {
      const SimilarityPoint pt(eta * 4.0, 4.0);
      const double v = collided_plane_integrand(pt, 1.2, pi - gap);
      EXPECT_TRUE(std::isfinite(v)) << "eta=" << eta << " gap=" << gap;
      const double near = collided_plane_integrand(pt, 1.2, pi - 1e-6);
      EXPECT_NEAR(v, near, 1e-4 * (1.0 + std::abs(near)));
    }
  EXPECT_THROW(collided_plane_integrand({2.0, 1.0}, 1.0, 1.0), DomainError);
}

TEST(PointSource, ZeroOutsideWavefront)
{
  const FluxValue f = point_source_flux(1.5, 1.0, 1.0);
  EXPECT_EQ(f.uncollided, 0.0);
  EXPECT_EQ(f.collided, 0.0);
}

TEST(PointSource, UncollidedMatchesDifferencedPlane)
{
  // -(1 / 2 pi r) d phi_u / dx off the shell: the plane uncollided flux is
  // flat inside the wavefront.
  const double fd = oracle::central_difference(
    [](double x) { return uncollided_plane({x, 1.0}); }, 0.5, 1e-6);
  const FluxValue f = point_source_flux(0.5, 1.0, 0.0);
  EXPECT_EQ(f.collided, 0.0);
  EXPECT_NEAR(f.uncollided, -fd / (2.0 * pi * 0.5), 1e-12);
}

TEST(PointSource, CollidedMatchesDifferencedPlane)
{
  for (auto [r, t, c] : {std::tuple{0.5, 1.0, 1.0}, {0.2, 1.0, 0.6},
                         {2.0, 5.0, 1.1}, {4.5, 5.0, 0.9}}) {
    const double fd = oracle::central_difference(
      [&](double x) { return collided_plane({x, t}, c); }, r, 1e-3);
    const double want = -fd / (2.0 * pi * r);
    const FluxValue f = point_source_flux(r, t, c);
    EXPECT_NEAR(f.collided, want, 1e-7 * std::max(1.0, std::abs(want)))
      << "r=" << r << " t=" << t;
  }
}

TEST(PointSource, RejectsNonPositiveRadius)
{
  EXPECT_THROW(point_source_flux(0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(point_source_flux(-0.1, 1.0, 1.0), DomainError);
}

TEST(LineSource, ZeroOutsideWavefront)
{
  const FluxValue f = line_source_flux(1.01, 1.0, 0.8);
  EXPECT_EQ(f.total(), 0.0);
}

TEST(LineSource, UncollidedClosedFormAndAbelProjection)
{
  const double t = 1.0;
  const FluxValue f = line_source_flux(0.5, t, 0.0);
  EXPECT_EQ(f.collided, 0.0);
  const double closed = std::exp(-t) / (2.0 * pi * t * std::sqrt(t * t - 0.25));
  EXPECT_NEAR(f.uncollided, closed, 1e-15);
  // Integrating the line flux across the plane recovers the plane pulse.
  for (double x : {0.0, 0.3, 0.8}) {
    const double a = oracle::abel_projection(
      [&](double r) { return uncollided_line(r, t); }, x, t);
    EXPECT_NEAR(a, uncollided_plane({x, t}), 1e-9);
  }
}

TEST(LineSource, CollidedMatchesAxisIntegralOfPointSource)
{
  const double r = 0.5;
  const double t = 5.0;
  const double c = 1.0;
  const double reach = std::sqrt(t * t - r * r);
  const auto point = [&](double z) {
    const double rho = std::hypot(r, z);
    return rho < t ? point_source_flux(rho, t, c).collided : 0.0;
  };
  // Both halves of the axis separately: the axis integral is even in z.
  const double upper = oracle::graded(point, 0.0, reach, 6, 32);
  const double lower = oracle::graded(point, -reach, 0.0, 6, 32);
  EXPECT_NEAR(upper, lower, 1e-12 * std::abs(upper));
  const double got = line_source_flux(r, t, c).collided;
  EXPECT_NEAR(got, upper + lower, 1e-8 * std::abs(got));
}

TEST(LineSource, CollidedAbelProjectionRecoversPlane)
{
  const double t = 1.0;
  const double c = 1.0;
  for (double x : {0.0, 0.4}) {
    const double a = oracle::abel_projection(
      [&](double r) { return line_source_flux(r, t, c).collided; }, x, t);
    const double want = collided_plane({x, t}, c);
    EXPECT_NEAR(a, want, 1e-7 * want) << "x=" << x;
  }
}

TEST(LineSource, FiniteOnAxis)
{
  const FluxValue f = line_source_flux(0.0, 2.0, 1.0);
  EXPECT_TRUE(std::isfinite(f.collided));
  EXPECT_GT(f.collided, 0.0);
  EXPECT_NEAR(f.collided, line_source_flux(1e-7, 2.0, 1.0).collided, 1e-6);
}

} // namespace
} // namespace uqtb
