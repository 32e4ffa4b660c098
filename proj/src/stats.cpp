#include "uqtb/stats.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

namespace uqtb {

double radical_inverse(std::uint64_t i)
{
  std::uint64_t r = i;
  r = ((r >> 1) & 0x5555555555555555ULL) | ((r & 0x5555555555555555ULL) << 1);
  r = ((r >> 2) & 0x3333333333333333ULL) | ((r & 0x3333333333333333ULL) << 2);
  r = ((r >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((r & 0x0F0F0F0F0F0F0F0FULL) << 4);
  r = ((r >> 8) & 0x00FF00FF00FF00FFULL) | ((r & 0x00FF00FF00FF00FFULL) << 8);
  r = ((r >> 16) & 0x0000FFFF0000FFFFULL) | ((r & 0x0000FFFF0000FFFFULL) << 16);
  r = (r >> 32) | (r << 32);
  return std::ldexp(static_cast<double>(r), -64);
}

std::vector<double> sobol_sequence(std::size_t n)
{
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i)
    theta[i] = 2.0 * radical_inverse(i + 1) - 1.0;
  return theta;
}

void QuantileTable::write_csv(std::ostream& os) const
{
  os << "p,value,n_samples\n";
  for (std::size_t i = 0; i < percentiles.size(); ++i)
    os << fmt::format("{:.16e},{:.16e},{}\n", percentiles[i], values[i],
                      n_samples);
}

std::vector<double> linear_quantiles(std::span<double> values,
                                     std::span<const double> grid)
{
  const std::size_t n = values.size();
  if (n == 0)
    throw DomainError("quantiles of an empty sample");

  // Order statistics needed by the grid, selected in increasing rank so each
  // nth_element works on what is left to the right of the previous one.
  std::vector<std::size_t> ranks;
  for (double p : grid) {
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    ranks.push_back(lo);
    ranks.push_back(std::min(lo + 1, n - 1));
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  std::size_t done = 0;
  for (std::size_t k : ranks) {
    std::nth_element(values.begin() + done, values.begin() + k, values.end());
    done = k + 1;
  }

  std::vector<double> out;
  out.reserve(grid.size());
  for (double p : grid) {
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    out.push_back(values[lo] + frac * (values[hi] - values[lo]));
  }
  return out;
}

std::vector<double> evaluate_samples(const ChaosExpansion& exp,
                                     std::span<const double> theta,
                                     Execution exec)
{
  std::vector<double> out(theta.size());
  constexpr std::size_t block = 4096;
  const std::size_t blocks = (theta.size() + block - 1) / block;
  for_each_index(blocks, exec, [&](std::size_t b) {
    const std::size_t end = std::min(theta.size(), (b + 1) * block);
    for (std::size_t i = b * block; i < end; ++i)
      out[i] = evaluate(exp, theta[i]);
  });
  return out;
}

QuantileTable empirical_quantiles(const ChaosExpansion& exp, std::size_t n,
                                  std::span<const double> grid, Execution exec)
{
  if (n < 100)
    throw DomainError("empirical quantiles need at least 100 samples");
  if (grid.empty())
    throw DomainError("percentile grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0))
      throw DomainError("percentiles must lie strictly inside (0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw DomainError("percentile grid must be strictly increasing");
  }
  const auto theta = sobol_sequence(n);
  auto samples = evaluate_samples(exp, theta, exec);

  QuantileTable table;
  table.percentiles.assign(grid.begin(), grid.end());
  table.values = linear_quantiles(samples, grid);
  table.n_samples = n;
  return table;
}

QuantileOracle::QuantileOracle(std::function<double(double)> response,
                               UncertainScatteringRatio unc)
  : response_(std::move(response)), unc_(unc)
{
  if (unc_.degenerate())
    return;
  constexpr int probes = 8;
  double previous = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double c = unc_.realize(-1.0 + 2.0 * i / (probes - 1));
    const double value = response_(c);
    if (i > 0 && !(value > previous))
      throw MonotonicityError(fmt::format(
        "response is not strictly increasing in c near c = {}", c));
    previous = value;
  }
}

double QuantileOracle::operator()(double p) const
{
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("percentile must lie strictly inside (0, 1)");
  return response_(unc_.realize(2.0 * p - 1.0));
}

double quantile_oracle(std::function<double(double)> response,
                       const UncertainScatteringRatio& unc, double p)
{
  return QuantileOracle(std::move(response), unc)(p);
}

namespace {

using cplx = std::complex<double>;

// expm1(z) - z, accurate for small |z|.
cplx expm1_minus_z(cplx z)
{
  if (std::abs(z) >= 0.5)
    return std::exp(z) - 1.0 - z;
  cplx term = 0.5 * z * z;
  cplx sum = term;
  for (int k = 3; k < 40; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum))
      break;
  }
  return sum;
}

} // namespace

double analytic_expectation_plane(const SimilarityPoint& pt,
                                  const UncertainScatteringRatio& unc,
                                  const KernelOptions& opts)
{
  if (unc.degenerate())
    throw DomainError("closed-form expectation needs a positive half-width");
  const double eta = std::abs(pt.eta());
  if (1.0 - eta < wavefront_band)
    return 0.0;

  const double t = pt.time();
  const double a = unc.half_width();
  const double cbar = unc.mean();
  const double omega = (1.0 - eta) * (1.0 + eta);
  const double log_q = 2.0 * std::atanh(eta);

  // With B = (eta^2 - 1) xi t the bracket
  //   B (a + cbar) + e^{aB} (B (a - cbar) - 2) + 2
  // equals -2 (e^{aB} - 1 - aB) + (e^{aB} - 1) B (a - cbar), which is O(B^2)
  // and is evaluated in that form to keep its digits as u -> pi.
  const double integral = integrate_adaptive_scalar(
    [&](double u) {
      const double ch = std::cos(0.5 * u);
      const cplx denom(eta * ch, std::sin(0.5 * u));
      const cplx xi = cplx(log_q, u) / denom * ch;
      const cplx b = -omega * xi * t;
      const cplx s2 = expm1_minus_z(a * b);
      const cplx e1 = s2 + a * b;
      const cplx bracket = -2.0 * s2 + e1 * b * (a - cbar);
      const cplx weight = std::exp(-0.5 * b * (a + cbar) - t);
      return (weight * bracket).real() / (ch * ch);
    },
    0.0, std::numbers::pi, opts.quadrature);

  return integral / (8.0 * std::numbers::pi * a * (-omega) * t * t);
}

Moments direct_moments(const BatchResponse& response,
                       const UncertainScatteringRatio& unc, double offset,
                       const AdaptiveOptions& opts)
{
  if (unc.degenerate()) {
    const double theta = 0.0;
    double value = 0.0;
    response(std::span<const double>(&theta, 1), std::span<double>(&value, 1));
    return {offset + value, 0.0};
  }
  std::vector<double> phi;
  double sums[2];
  integrate_adaptive_panels(
    [&](std::span<const double> theta, std::span<double> values) {
      phi.resize(theta.size());
      response(theta, phi);
      for (std::size_t i = 0; i < theta.size(); ++i) {
        values[2 * i] = phi[i];
        values[2 * i + 1] = phi[i] * phi[i];
      }
    },
    -1.0, 1.0, std::span<double>(sums, 2), opts);
  const double mean = 0.5 * sums[0];
  return {offset + mean, 0.5 * sums[1] - mean * mean};
}

} // namespace uqtb
