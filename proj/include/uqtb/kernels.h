#pragma once

#include <cmath>
#include <optional>
#include <span>

#include "uqtb/quadrature.h"

namespace uqtb {

//! Space-time probe of an infinite-medium problem in mean free paths and mean
//! free times, with the similarity variable eta = coord / time.
class SimilarityPoint {
public:
  //! Throws DomainError unless time > 0.
  SimilarityPoint(double coord, double time);

  double coord() const { return coord_; }
  double time() const { return time_; }
  double eta() const { return eta_; }

  //! Strictly inside the wavefront, |eta| < 1.
  bool inside_wavefront() const { return std::abs(eta_) < 1.0; }

  //! (1 + eta) / (1 - eta), defined only inside the wavefront.
  std::optional<double> q() const;

private:
  double coord_;
  double time_;
  double eta_;
};

//! Scalar flux split into the part that never scattered and the part that
//! did.
struct FluxValue {
  double uncollided = 0.0;
  double collided = 0.0;

  double total() const { return uncollided + collided; }
};

//! Width of the band 1 - |eta| inside which the collided plane flux is
//! returned as exactly zero.
inline constexpr double wavefront_band = 1e-12;

struct KernelOptions {
  AdaptiveOptions quadrature{64, 1e-10, 1e-15, 1024};
};

//! Uncollided plane-pulse scalar flux exp(-t) / (2t) inside the wavefront.
double uncollided_plane(const SimilarityPoint& pt);

//! Collided plane-pulse scalar flux for a single scattering ratio.
double collided_plane(const SimilarityPoint& pt, double c,
                      const KernelOptions& opts = {});

//! Collided plane-pulse flux for every scattering ratio in `c` at once. The u
//! quadrature is shared by the whole batch, so the result is a smooth
//! function of each c (no c-dependent refinement decisions).
void collided_plane(const SimilarityPoint& pt, std::span<const double> c,
                    std::span<double> out, const KernelOptions& opts = {});

//! sec^2(u/2) Re[xi^2 exp(c t (1 - eta^2) xi / 2)], the integrand of the
//! collided plane flux over u in [0, pi]. Finite up to and including u = pi.
//! Throws DomainError unless the point is strictly inside the wavefront.
double collided_plane_integrand(const SimilarityPoint& pt, double c, double u);

//! d(phi_c)/dx of the plane pulse, differentiated under the u integral.
void collided_plane_dx(const SimilarityPoint& pt, std::span<const double> c,
                       std::span<double> out, const KernelOptions& opts = {});

//! Point-pulse (3-D) scalar flux at radius r, phi = -(1 / 2 pi r) d phi_pl / dx.
//! The uncollided part is a shell on r = t and is reported as 0 off the shell.
//! Throws DomainError for r <= 0 or t <= 0.
FluxValue point_source_flux(double r, double t, double c,
                            const KernelOptions& opts = {});
void point_source_collided(double r, double t, std::span<const double> c,
                           std::span<double> out,
                           const KernelOptions& opts = {});

struct LineOptions {
  KernelOptions kernel;
  AdaptiveOptions axis{16, 1e-10, 1e-15, 1024};
};

//! Line-pulse (2-D) scalar flux, the point-pulse flux integrated along the
//! source axis. Finite on the axis, r = 0.
FluxValue line_source_flux(double r, double t, double c,
                           const LineOptions& opts = {});
double uncollided_line(double r, double t);
void line_source_collided(double r, double t, std::span<const double> c,
                          std::span<double> out, const LineOptions& opts = {});

} // namespace uqtb
