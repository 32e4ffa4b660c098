#include "uqtb/kernels.h"

#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace uqtb {

using cplx = std::complex<double>;
using std::numbers::pi;

SimilarityPoint::SimilarityPoint(double coord, double time)
  : coord_(coord), time_(time), eta_(coord / time)
{
  if (!(time > 0.0) || !std::isfinite(time))
    throw DomainError("time must be positive, got " + std::to_string(time));
  if (!std::isfinite(coord))
    throw DomainError("position must be finite");
}

std::optional<double> SimilarityPoint::q() const
{
  if (!inside_wavefront())
    return std::nullopt;
  return (1.0 + eta_) / (1.0 - eta_);
}

double uncollided_plane(const SimilarityPoint& pt)
{
  if (!pt.inside_wavefront())
    return 0.0;
  return 0.5 * std::exp(-pt.time()) / pt.time();
}

namespace {

void check_batch(std::span<const double> c, std::span<double> out)
{
  if (c.size() != out.size())
    throw DomainError("scattering-ratio batch and output differ in length");
  for (double ci : c)
    if (!(ci >= 0.0))
      throw DomainError("scattering ratio must be non-negative");
}

inline cplx cexp(cplx z)
{
  const double m = std::exp(z.real());
  return {m * std::cos(z.imag()), m * std::sin(z.imag())};
}

// Pieces of the u-integrand shared by every c in a batch. The working
// variable zeta = sec(u/2) * xi stays finite on the whole of [0, pi]:
// zeta = (log q + iu) / (eta cos(u/2) + i sin(u/2)), so
// sec^2(u/2) xi^2 = zeta^2 with no 0 * inf at u = pi.
struct UTerms {
  double cos_half;
  cplx denom; // eta cos(u/2) + i sin(u/2)
  cplx zeta;
  cplx xi;
};

inline UTerms u_terms(double u, double eta, double log_q)
{
  UTerms s;
  s.cos_half = std::cos(0.5 * u);
  s.denom = cplx(eta * s.cos_half, std::sin(0.5 * u));
  s.zeta = cplx(log_q, u) / s.denom;
  s.xi = s.zeta * s.cos_half;
  return s;
}

} // namespace

void collided_plane(const SimilarityPoint& pt, std::span<const double> c,
                    std::span<double> out, const KernelOptions& opts)
{
  check_batch(c, out);
  std::fill(out.begin(), out.end(), 0.0);
  const double eta = std::abs(pt.eta());
  if (1.0 - eta < wavefront_band || c.empty())
    return;

  const double t = pt.time();
  const double omega = (1.0 - eta) * (1.0 + eta);
  const double log_q = 2.0 * std::atanh(eta);
  std::vector<double> rate(c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    rate[k] = 0.5 * c[k] * t * omega;

  integrate_adaptive(
    [&](double u, std::span<double> v) {
      const UTerms s = u_terms(u, eta, log_q);
      const cplx z2 = s.zeta * s.zeta;
      for (std::size_t k = 0; k < rate.size(); ++k)
        v[k] = (z2 * cexp(rate[k] * s.xi)).real();
    },
    0.0, pi, out, opts.quadrature);

  const double pre = std::exp(-t) / (8.0 * pi) * omega;
  for (std::size_t k = 0; k < c.size(); ++k)
    out[k] *= c[k] * pre;
}

double collided_plane_integrand(const SimilarityPoint& pt, double c, double u)
{
  const double eta = std::abs(pt.eta());
  if (!pt.inside_wavefront())
    throw DomainError("integrand needs a point inside the wavefront");
  const double omega = (1.0 - eta) * (1.0 + eta);
  const UTerms s = u_terms(u, eta, 2.0 * std::atanh(eta));
  return (s.zeta * s.zeta * cexp(0.5 * c * pt.time() * omega * s.xi)).real();
}

double collided_plane(const SimilarityPoint& pt, double c,
                      const KernelOptions& opts)
{
  double out = 0.0;
  collided_plane(pt, std::span<const double>(&c, 1), std::span<double>(&out, 1),
                 opts);
  return out;
}

namespace {

// d(phi_c)/dx at |eta| = 1 - gap, |x| = eta t, for x >= 0. Taking the
// distance to the wavefront as an input lets callers that know it exactly
// avoid the cancellation in 1 - |x| / t.
void plane_dx_from_gap(double gap, double t, std::span<const double> c,
                       std::span<double> out, const KernelOptions& opts)
{
  std::fill(out.begin(), out.end(), 0.0);
  const double eta = 1.0 - gap;
  if (gap < wavefront_band || eta == 0.0 || c.empty())
    return;

  const double omega = gap * (2.0 - gap);
  const double log_q = std::log((2.0 - gap) / gap);
  std::vector<double> half_ct(c.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    half_ct[k] = 0.5 * c[k] * t;

  // d/d eta [(1 - eta^2) I(eta)] = -2 eta I + (1 - eta^2) dI/d eta, with the
  // (1 - eta^2) folded into each term so nothing blows up as eta -> 1:
  //   (1 - eta^2) d(log q)/d eta = 2
  //   (1 - eta^2) d xi/d eta     = (2 - (1 - eta^2) xi) cos(u/2) / denom
  integrate_adaptive(
    [&](double u, std::span<double> v) {
      const UTerms s = u_terms(u, eta, log_q);
      const cplx z2 = s.zeta * s.zeta;
      const cplx lead = 2.0 - omega * s.xi;
      const cplx dzeta = 2.0 * s.zeta * lead / s.denom;
      const cplx dxi = omega * lead * s.cos_half / s.denom;
      const cplx dexp = -2.0 * eta * omega * s.xi + dxi;
      for (std::size_t k = 0; k < half_ct.size(); ++k) {
        const cplx e = cexp(half_ct[k] * omega * s.xi);
        v[k] = -2.0 * eta * (z2 * e).real() +
               (e * (dzeta + z2 * half_ct[k] * dexp)).real();
      }
    },
    0.0, pi, out, opts.quadrature);

  const double pre = std::exp(-t) / (8.0 * pi * t);
  for (std::size_t k = 0; k < c.size(); ++k)
    out[k] *= c[k] * pre;
}

// Point-source collided flux at radius r = t (1 - gap).
void point_from_gap(double r, double gap, double t, std::span<const double> c,
                    std::span<double> out, const KernelOptions& opts)
{
  plane_dx_from_gap(gap, t, c, out, opts);
  const double scale = -1.0 / (2.0 * pi * r);
  for (double& v : out)
    v *= scale;
}

} // namespace

void collided_plane_dx(const SimilarityPoint& pt, std::span<const double> c,
                       std::span<double> out, const KernelOptions& opts)
{
  check_batch(c, out);
  plane_dx_from_gap(1.0 - std::abs(pt.eta()), pt.time(), c, out, opts);
  if (pt.eta() < 0.0)
    for (double& v : out)
      v = -v;
}

void point_source_collided(double r, double t, std::span<const double> c,
                           std::span<double> out, const KernelOptions& opts)
{
  const SimilarityPoint pt(r, t);
  if (!(r > 0.0))
    throw DomainError("point-source flux is singular at r = 0");
  check_batch(c, out);
  point_from_gap(r, 1.0 - pt.eta(), t, c, out, opts);
}

FluxValue point_source_flux(double r, double t, double c,
                            const KernelOptions& opts)
{
  FluxValue f;
  point_source_collided(r, t, std::span<const double>(&c, 1),
                        std::span<double>(&f.collided, 1), opts);
  return f;
}

double uncollided_line(double r, double t)
{
  const SimilarityPoint pt(r, t);
  if (r < 0.0)
    throw DomainError("radius must be non-negative");
  if (r >= t)
    return 0.0;
  return std::exp(-t) / (2.0 * pi * t * std::sqrt((t - r) * (t + r)));
}

void line_source_collided(double r, double t, std::span<const double> c,
                          std::span<double> out, const LineOptions& opts)
{
  const SimilarityPoint pt(r, t);
  if (r < 0.0)
    throw DomainError("radius must be non-negative");
  check_batch(c, out);
  std::fill(out.begin(), out.end(), 0.0);
  if (1.0 - r / t < wavefront_band || c.empty())
    return;

  // phi_line(r) = 2 int_0^Z phi_pt(sqrt(r^2 + z^2)) dz, Z = sqrt(t^2 - r^2).
  // z = Z (1 - (1 - s)^3) clusters nodes at the wavefront end, where the
  // point-source flux carries a logarithmic singularity. The distance to
  // the wavefront, t - rho = (Z - z)(Z + z) / (t + rho), is formed without
  // cancellation since Z - z = Z (1 - s)^3.
  const double reach = std::sqrt((t - r) * (t + r));
  std::vector<double> point(c.size());
  integrate_adaptive(
    [&](double s, std::span<double> v) {
      const double w = 1.0 - s;
      const double z = reach * (1.0 - w * w * w);
      const double jac = 3.0 * reach * w * w;
      const double rho = std::hypot(r, z);
      const double gap = reach * w * w * w * (reach + z) / ((t + rho) * t);
      if (rho == 0.0 || gap < wavefront_band) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
      }
      point_from_gap(rho, gap, t, c, point, opts.kernel);
      for (std::size_t k = 0; k < point.size(); ++k)
        v[k] = 2.0 * jac * point[k];
    },
    0.0, 1.0, out, opts.axis);
}

FluxValue line_source_flux(double r, double t, double c,
                           const LineOptions& opts)
{
  FluxValue f;
  f.uncollided = uncollided_line(r, t);
  line_source_collided(r, t, std::span<const double>(&c, 1),
                       std::span<double>(&f.collided, 1), opts);
  return f;
}

} // namespace uqtb
