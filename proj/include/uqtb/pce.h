#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "uqtb/execution.h"
#include "uqtb/sources.h"

namespace uqtb {

//! c = mean + half_width * theta with theta ~ U[-1, 1].
class UncertainScatteringRatio {
public:
  //! Throws DomainError unless mean > 0, half_width >= 0 and
  //! mean - half_width > 0.
  UncertainScatteringRatio(double mean, double half_width);

  double mean() const { return mean_; }
  double half_width() const { return half_width_; }
  bool degenerate() const { return half_width_ == 0.0; }

  //! Throws DomainError for theta outside [-1, 1].
  double realize(double theta) const;

  //! Density of theta: 1/2 on [-1, 1].
  static double pdf(double theta)
  {
    return (theta >= -1.0 && theta <= 1.0) ? 0.5 : 0.0;
  }

  bool operator==(const UncertainScatteringRatio&) const = default;

private:
  double mean_;
  double half_width_;
};

//! Collided response as a function of theta, evaluated for a whole batch of
//! abscissas at once.
using BatchResponse =
  std::function<void(std::span<const double> theta, std::span<double> out)>;

//! Wraps a pointwise response; the abscissas are evaluated in an OpenMP loop
//! or serially, with identical results.
BatchResponse batch_response(std::function<double(double)> fn,
                             Execution exec = Execution::parallel);

//! Collided flux of a source at a probe, as a function of theta.
BatchResponse source_response(const SourceConfig& cfg, double coord, double t,
                              const UncertainScatteringRatio& unc,
                              const SolverOptions& opts = {});

//! Where an expansion was built. Purely descriptive.
struct Probe {
  double coord = 0.0;
  double time = 0.0;
};

//! phi(theta) = uncollided_offset + sum_j coeffs[j] P_j(theta), with the
//! coefficients in flux units on the unnormalised Legendre basis.
struct ChaosExpansion {
  std::vector<double> coeffs;
  double uncollided_offset = 0.0;
  Probe location;
  SourceConfig source;
  UncertainScatteringRatio uncertainty{1.0, 0.0};
  bool aliasing = false; // doubling the projection order moved a coefficient

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct ProjectionOptions {
  int quad_order = 0; // 0 selects max(2N, 16)
  bool check_aliasing = true;
  double aliasing_tol = 1e-9;
};

int default_quad_order(int order);

//! P_0(x) ... P_n(x) by the three-term recurrence.
void legendre_values(double x, std::span<double> out);

//! a_j = (2j+1)/2 int_{-1}^{1} phi_c P_j dtheta by Gauss-Legendre. One
//! response evaluation per node is shared by every j. Only the coefficients
//! and the aliasing flag are filled in; the caller owns the metadata.
ChaosExpansion project(const BatchResponse& response, int order,
                       const ProjectionOptions& opts = {});

//! Expansion of a source's flux at a probe, with offset and metadata set.
ChaosExpansion expand(const SourceConfig& cfg, double coord, double t,
                      const UncertainScatteringRatio& unc, int order,
                      const ProjectionOptions& popts = {},
                      const SolverOptions& sopts = {});

//! Throws DomainError for theta outside [-1, 1].
double evaluate(const ChaosExpansion& exp, double theta);

double expectation(const ChaosExpansion& exp);
double variance(const ChaosExpansion& exp);

//! Flat record of an expansion with fields in the order source, x, t, cbar,
//! omega1, N, a0 ... aN, phi_u. The position column is named r for the line
//! source.
std::string expansion_csv_header(const ChaosExpansion& exp);
std::string expansion_csv_row(const ChaosExpansion& exp);
nlohmann::ordered_json expansion_json(const ChaosExpansion& exp);

} // namespace uqtb
