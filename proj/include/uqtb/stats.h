#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "uqtb/pce.h"

namespace uqtb {

//! Base-2 radical inverse of i, exact in double for i < 2^53.
double radical_inverse(std::uint64_t i);

//! First n points of the one-dimensional Sobol sequence (radical inverse of
//! 1, 2, ..., n) mapped from (0, 1) onto theta in (-1, 1).
std::vector<double> sobol_sequence(std::size_t n);

//! Percentile grid and the matching flux values.
struct QuantileTable {
  std::vector<double> percentiles;
  std::vector<double> values;
  std::size_t n_samples = 0;
  std::string estimator = "linear"; // value at rank p (n - 1), interpolated

  void write_csv(std::ostream& os) const;
};

//! Linear-interpolation quantiles of `values` at rank p (n - 1), zero-based.
//! Reorders `values`; the result does not depend on the initial order.
std::vector<double> linear_quantiles(std::span<double> values,
                                     std::span<const double> grid);

//! Expansion evaluated at every theta, in an OpenMP loop or serially.
std::vector<double> evaluate_samples(const ChaosExpansion& exp,
                                     std::span<const double> theta,
                                     Execution exec = Execution::parallel);

//! Quantiles of the expansion from n Sobol samples of theta. Requires
//! n >= 100 and a strictly increasing grid inside (0, 1).
QuantileTable empirical_quantiles(const ChaosExpansion& exp, std::size_t n,
                                  std::span<const double> grid,
                                  Execution exec = Execution::parallel);

//! Percentiles of a response that is strictly increasing in c: the p-th
//! quantile is the response at the p-th quantile of c. Monotonicity is
//! checked once, at 8 equispaced values of c, on construction.
class QuantileOracle {
public:
  //! Throws MonotonicityError when the probes are not strictly increasing.
  QuantileOracle(std::function<double(double c)> response,
                 UncertainScatteringRatio unc);

  //! Throws DomainError unless 0 < p < 1.
  double operator()(double p) const;

private:
  std::function<double(double)> response_;
  UncertainScatteringRatio unc_;
};

double quantile_oracle(std::function<double(double c)> response,
                       const UncertainScatteringRatio& unc, double p);

//! Closed-form expectation over theta of the collided plane-pulse flux,
//! reduced to a single u integral. Needs half_width > 0.
double analytic_expectation_plane(const SimilarityPoint& pt,
                                  const UncertainScatteringRatio& unc,
                                  const KernelOptions& opts = {});

struct Moments {
  double expectation = 0.0;
  double variance = 0.0;
};

//! Moments by adaptive quadrature over theta of a collided response:
//! E = offset + (1/2) int phi dtheta and
//! VAR = (1/2) int phi^2 dtheta - ((1/2) int phi dtheta)^2.
Moments direct_moments(const BatchResponse& response,
                       const UncertainScatteringRatio& unc,
                       double offset = 0.0,
                       const AdaptiveOptions& opts = {16, 1e-12, 1e-300, 1024});

} // namespace uqtb
