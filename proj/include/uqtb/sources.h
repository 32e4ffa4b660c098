#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "uqtb/kernels.h"

namespace uqtb {

enum class SourceKind { plane_pulse, square, gaussian, line };

std::string_view to_string(SourceKind kind);
std::optional<SourceKind> parse_source_kind(std::string_view name);

//! One row of the benchmark table. Fields that do not apply to a kind are 0.
struct SourceConfig {
  SourceKind kind = SourceKind::plane_pulse;
  double x0 = 0.0;    // square half-width, mfp
  double t0 = 0.0;    // emission duration, mean free times
  double sigma = 0.0; // Gaussian width, profile exp(-x^2 / sigma^2)

  static SourceConfig plane_pulse() { return {}; }
  static SourceConfig square(double x0 = 0.5, double t0 = 5.0)
  {
    return {SourceKind::square, x0, t0, 0.0};
  }
  static SourceConfig gaussian(double sigma = 0.5, double t0 = 5.0)
  {
    return {SourceKind::gaussian, 0.0, t0, sigma};
  }
  static SourceConfig line() { return {SourceKind::line, 0.0, 0.0, 0.0}; }

  //! Throws DomainError on non-positive widths/durations or stray fields.
  void validate() const;

  //! Slab geometry (coordinate may be negative) as opposed to cylindrical.
  bool slab() const { return kind != SourceKind::line; }

  //! Half-width of the spatial region in which the flux can be non-zero at
  //! time t (the Gaussian uses its truncation envelope).
  double support(double t) const;

  bool operator==(const SourceConfig&) const = default;
};

//! Gaussian source profile is cut off at |x'| = gaussian_cutoff * sigma.
inline constexpr double gaussian_cutoff = 8.5;

struct SolverOptions {
  KernelOptions kernel;
  LineOptions line;
  AdaptiveOptions time{16, 1e-8, 1e-15, 1024};
  AdaptiveOptions space{16, 1e-8, 1e-15, 1024};
};

FluxValue square_source_flux(double x, double t, double c,
                             const SourceConfig& cfg,
                             const SolverOptions& opts = {});
FluxValue gaussian_source_flux(double x, double t, double c,
                               const SourceConfig& cfg,
                               const SolverOptions& opts = {});

//! Uncollided flux of any source kind at (coord, t). Independent of c.
double uncollided_flux(const SourceConfig& cfg, double coord, double t,
                       const SolverOptions& opts = {});

//! Collided flux of any source kind for a batch of scattering ratios. All
//! members of the batch share one set of quadrature decisions.
void collided_flux(const SourceConfig& cfg, double coord, double t,
                   std::span<const double> c, std::span<double> out,
                   const SolverOptions& opts = {});

FluxValue source_flux(const SourceConfig& cfg, double coord, double t, double c,
                      const SolverOptions& opts = {});

} // namespace uqtb
