#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.h"
#include "uqtb/error.h"
#include "uqtb/sources.h"

namespace uqtb {
namespace {

double rel_diff(double a, double b)
{
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

TEST(SourceConfig, NamesRoundTrip)
{
  for (SourceKind k : {SourceKind::plane_pulse, SourceKind::square,
                       SourceKind::gaussian, SourceKind::line}) {
    const auto parsed = parse_source_kind(to_string(k));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, k);
  }
  EXPECT_FALSE(parse_source_kind("disk").has_value());
}

TEST(SourceConfig, BenchmarkDefaults)
{
  const auto sq = SourceConfig::square();
  EXPECT_EQ(sq.x0, 0.5);
  EXPECT_EQ(sq.t0, 5.0);
  const auto g = SourceConfig::gaussian();
  EXPECT_EQ(g.sigma, 0.5);
  EXPECT_EQ(g.t0, 5.0);
}

TEST(SourceConfig, ValidateRejectsBadFields)
{
  EXPECT_THROW(SourceConfig::square(0.0, 5.0).validate(), DomainError);
  EXPECT_THROW(SourceConfig::square(0.5, -1.0).validate(), DomainError);
  EXPECT_THROW(SourceConfig::gaussian(0.0, 5.0).validate(), DomainError);
  SourceConfig stray = SourceConfig::plane_pulse();
  stray.sigma = 1.0;
  EXPECT_THROW(stray.validate(), DomainError);
  EXPECT_NO_THROW(SourceConfig::line().validate());
}

TEST(SourceConfig, Support)
{
  EXPECT_EQ(SourceConfig::plane_pulse().support(2.0), 2.0);
  EXPECT_EQ(SourceConfig::square(0.5, 5.0).support(2.0), 2.5);
  EXPECT_EQ(SourceConfig::gaussian(0.5, 5.0).support(1.0),
            gaussian_cutoff * 0.5 + 1.0);
}

TEST(SquareSource, ZeroBeyondSignalFront)
{
  const auto cfg = SourceConfig::square();
  for (double t : {0.5, 1.0, 3.0}) {
    const FluxValue f = square_source_flux(cfg.x0 + t + 0.1, t, 1.0, cfg);
    EXPECT_EQ(f.uncollided, 0.0);
    EXPECT_EQ(f.collided, 0.0);
  }
}

TEST(SquareSource, UncollidedAtCenterClosedForm)
{
  // Inside the source, t < t0: the light cone covers [-tau, tau] of the
  // source for tau < x0 and the whole source after that.
  const double x0 = 0.5;
  const double t = 1.0;
  const double early = 1.0 - std::exp(-x0);
  const double late = oracle::composite(
    [](double tau) { return 0.5 * std::exp(-tau) / tau; }, x0, t, 4, 32);
  const FluxValue f = square_source_flux(0.0, t, 0.0, SourceConfig::square());
  EXPECT_EQ(f.collided, 0.0);
  EXPECT_NEAR(f.uncollided, early + late, 1e-12);
  const FluxValue brute =
    oracle::brute_force_source(SourceConfig::square(), 0.0, t, 0.0);
  EXPECT_LT(rel_diff(f.uncollided, brute.uncollided), 1e-8);
}

TEST(SquareSource, CollidedAtCenterMatchesBruteForce)
{
  const auto cfg = SourceConfig::square();
  const FluxValue f = square_source_flux(0.0, 1.0, 1.0, cfg);
  const FluxValue brute = oracle::brute_force_source(cfg, 0.0, 1.0, 1.0);
  EXPECT_LT(rel_diff(f.collided, brute.collided), 1e-7);
}

TEST(SquareSource, RejectsWrongKindAndTime)
{
  EXPECT_THROW(square_source_flux(0.0, 1.0, 1.0, SourceConfig::gaussian()),
               DomainError);
  EXPECT_THROW(square_source_flux(0.0, 0.0, 1.0, SourceConfig::square()),
               DomainError);
}

TEST(GaussianSource, VanishesAsTimeGoesToZero)
{
  const auto cfg = SourceConfig::gaussian();
  double previous = 1.0;
  for (double t : {1e-1, 1e-3, 1e-6}) {
    const double v = gaussian_source_flux(0.0, t, 1.0, cfg).total();
    EXPECT_LT(v, previous);
    EXPECT_LT(v, 2.0 * t);
    previous = v;
  }
}

TEST(GaussianSource, NegligibleBeyondTail)
{
  const auto cfg = SourceConfig::gaussian();
  const double t = 1.0;
  const FluxValue f = gaussian_source_flux(10.0 * cfg.sigma + t, t, 1.0, cfg);
  EXPECT_LT(f.total(), 1e-12);
}

TEST(GaussianSource, CenterMatchesBruteForce)
{
  const auto cfg = SourceConfig::gaussian(0.5, 5.0);
  const FluxValue f = gaussian_source_flux(0.0, 1.0, 1.0, cfg);
  const FluxValue brute = oracle::brute_force_source(cfg, 0.0, 1.0, 1.0);
  EXPECT_LT(rel_diff(f.collided, brute.collided), 1e-7);
  EXPECT_LT(rel_diff(f.uncollided, brute.uncollided), 1e-7);
}

class FiniteSources : public ::testing::TestWithParam<SourceConfig> {};

TEST_P(FiniteSources, AgreesWithBruteForceAtTenProbes)
{
  const SourceConfig cfg = GetParam();
  const std::vector<std::pair<double, double>> probes{
    {0.0, 0.5}, {0.25, 0.5}, {0.9, 0.5}, {0.0, 1.0}, {0.45, 1.0},
    {1.3, 1.0}, {-0.7, 2.0}, {2.2, 2.0}, {0.1, 3.0}, {3.1, 3.0}};
  for (auto [x, t] : probes) {
    const FluxValue f = source_flux(cfg, x, t, 0.95);
    const FluxValue brute = oracle::brute_force_source(cfg, x, t, 0.95);
    EXPECT_LT(rel_diff(f.uncollided, brute.uncollided), 1e-6)
      << "x=" << x << " t=" << t;
    EXPECT_LT(rel_diff(f.collided, brute.collided), 1e-6)
      << "x=" << x << " t=" << t;
  }
}

TEST_P(FiniteSources, SymmetricInPosition)
{
  const SourceConfig cfg = GetParam();
  for (auto [x, t] : {std::pair{0.3, 1.0}, {1.1, 1.0}, {2.0, 3.0}}) {
    const FluxValue a = source_flux(cfg, x, t, 1.1);
    const FluxValue b = source_flux(cfg, -x, t, 1.1);
    EXPECT_NEAR(a.uncollided, b.uncollided, 1e-10);
    EXPECT_NEAR(a.collided, b.collided, 1e-10);
  }
}

TEST_P(FiniteSources, IncreasingInScatteringRatio)
{
  const SourceConfig cfg = GetParam();
  const std::vector<double> c{0.2, 0.5, 0.8, 1.0, 1.2, 1.5};
  std::vector<double> out(c.size());
  collided_flux(cfg, 0.4, 1.5, c, out);
  for (std::size_t k = 0; k + 1 < c.size(); ++k)
    EXPECT_LT(out[k], out[k + 1]);
}

TEST_P(FiniteSources, BatchMatchesSingle)
{
  const SourceConfig cfg = GetParam();
  const std::vector<double> c{0.6, 1.3};
  std::vector<double> out(c.size());
  collided_flux(cfg, 0.2, 1.0, c, out);
  for (std::size_t k = 0; k < c.size(); ++k)
    EXPECT_LT(rel_diff(out[k], source_flux(cfg, 0.2, 1.0, c[k]).collided),
              1e-9);
}

INSTANTIATE_TEST_SUITE_P(Benchmark, FiniteSources,
                         ::testing::Values(SourceConfig::square(),
                                           SourceConfig::gaussian()));

TEST(SquareSource, CollidedNonzeroAtWavefrontWhileOn)
{
  const auto cfg = SourceConfig::square();
  for (double t : {0.5, 1.0, 4.0}) {
    const double x = cfg.x0 + t - 1e-3;
    EXPECT_GT(square_source_flux(x, t, 1.0, cfg).collided, 0.0) << "t=" << t;
  }
}

TEST(SquareSource, AfterShutoff)
{
  // t > t0: emission has stopped, the lag integral starts at t - t0.
  const auto cfg = SourceConfig::square(0.5, 1.0);
  const FluxValue f = square_source_flux(0.2, 2.5, 1.0, cfg);
  const FluxValue brute = oracle::brute_force_source(cfg, 0.2, 2.5, 1.0);
  EXPECT_LT(rel_diff(f.uncollided, brute.uncollided), 1e-6);
  EXPECT_LT(rel_diff(f.collided, brute.collided), 1e-6);
}

TEST(SquareSource, SmallSupportLimitIsPlanePulse)
{
  const double eps = 1e-3;
  const auto cfg = SourceConfig::square(eps, eps);
  const FluxValue f = square_source_flux(0.5, 1.0, 1.0, cfg);
  const double scaled = f.total() / (2.0 * eps * eps);
  const double plane =
    uncollided_plane({0.5, 1.0}) + collided_plane({0.5, 1.0}, 1.0);
  EXPECT_LT(rel_diff(scaled, plane), 1e-2);
}

TEST(SourceDispatch, PlaneAndLine)
{
  const FluxValue plane = source_flux(SourceConfig::plane_pulse(), 0.5, 1.0, 1.0);
  EXPECT_EQ(plane.uncollided, uncollided_plane({0.5, 1.0}));
  EXPECT_EQ(plane.collided, collided_plane({0.5, 1.0}, 1.0));
  const FluxValue line = source_flux(SourceConfig::line(), 0.5, 1.0, 1.0);
  const FluxValue direct = line_source_flux(0.5, 1.0, 1.0);
  EXPECT_EQ(line.uncollided, direct.uncollided);
  EXPECT_EQ(line.collided, direct.collided);
  EXPECT_THROW(source_flux(SourceConfig::line(), -0.5, 1.0, 1.0), DomainError);
}

} // namespace
} // namespace uqtb
