#include "uqtb/sources.h"

#include <algorithm>
#include <numbers>
#include <vector>

namespace uqtb {

std::string_view to_string(SourceKind kind)
{
  switch (kind) {
  case SourceKind::plane_pulse:
    return "plane";
  case SourceKind::square:
    return "square";
  case SourceKind::gaussian:
    return "gaussian";
  case SourceKind::line:
    return "line";
  }
  return "unknown";
}

std::optional<SourceKind> parse_source_kind(std::string_view name)
{
  if (name == "plane" || name == "plane_pulse")
    return SourceKind::plane_pulse;
  if (name == "square")
    return SourceKind::square;
  if (name == "gaussian")
    return SourceKind::gaussian;
  if (name == "line")
    return SourceKind::line;
  return std::nullopt;
}

void SourceConfig::validate() const
{
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError(std::string(what) + " must be positive");
  };
  auto absent = [](double v, const char* what) {
    if (v != 0.0)
      throw DomainError(std::string(what) + " does not apply to this source");
  };
  switch (kind) {
  case SourceKind::plane_pulse:
  case SourceKind::line:
    absent(x0, "x0");
    absent(t0, "t0");
    absent(sigma, "sigma");
    break;
  case SourceKind::square:
    positive(x0, "x0");
    positive(t0, "t0");
    absent(sigma, "sigma");
    break;
  case SourceKind::gaussian:
    positive(sigma, "sigma");
    positive(t0, "t0");
    absent(x0, "x0");
    break;
  }
}

double SourceConfig::support(double t) const
{
  switch (kind) {
  case SourceKind::square:
    return x0 + t;
  case SourceKind::gaussian:
    return gaussian_cutoff * sigma + t;
  default:
    return t;
  }
}

namespace {

// A window end this close to the light cone, relative to the lag, counts as
// lying on it.
constexpr double light_cone_gap = 1e-12;

// Finite source with spatial profile on [-half_width, half_width] switched
// on for t' in [0, t0], convolved against the plane-pulse Green's function.
// Written in the lag tau = t - t' and offset s = x - x'.
class Convolution {
public:
  Convolution(const SourceConfig& cfg, double x, double t)
    : cfg_(cfg), x_(x), t_(t)
  {
    cfg.validate();
    if (!(t > 0.0))
      throw DomainError("time must be positive");
    half_width_ = cfg.kind == SourceKind::square ? cfg.x0
                                                 : gaussian_cutoff * cfg.sigma;
    // The lag integral is split where the wavefront |s| = tau crosses an
    // edge of the support, since the integrand has a kink there. The offset
    // integral is split at s = 0 and, for a Gaussian, at its peak.
    const double tau_lo = std::max(0.0, t - cfg.t0);
    pieces_.push_back(tau_lo);
    for (double edge : {std::abs(x - half_width_), std::abs(x + half_width_)})
      if (edge > tau_lo && edge < t)
        pieces_.push_back(edge);
    offsets_.push_back(0.0);
    if (cfg.kind == SourceKind::gaussian && x != 0.0)
      offsets_.push_back(x);
    std::sort(offsets_.begin(), offsets_.end());
    pieces_.push_back(t);
    std::sort(pieces_.begin(), pieces_.end());
    pieces_.erase(std::unique(pieces_.begin(), pieces_.end()), pieces_.end());
  }

  bool outside_signal() const { return std::abs(x_) >= half_width_ + t_; }

  double uncollided(const SolverOptions& opts) const
  {
    if (outside_signal())
      return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
      total += integrate_graded_scalar(
        [&](double tau) {
          const auto [lo, hi] = window(tau);
          if (hi <= lo)
            return 0.0;
          // e^{-tau} / (2 tau) times the source mass inside the light cone;
          // that mass is O(tau), which cancels the 1/tau.
          return 0.5 * std::exp(-tau) * profile_mass(lo, hi) / tau;
        },
        pieces_[i], pieces_[i + 1], opts.time);
    return total;
  }

  void collided(std::span<const double> c, std::span<double> out,
                const SolverOptions& opts) const
  {
    std::fill(out.begin(), out.end(), 0.0);
    if (outside_signal())
      return;
    std::vector<double> piece(c.size());
    std::vector<double> green(c.size());
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
      integrate_graded(
        [&](double tau, std::span<double> v) {
          std::fill(v.begin(), v.end(), 0.0);
          const auto [lo, hi] = window(tau);
          if (hi <= lo)
            return;
          const auto inner = [&](double s, std::span<double> w) {
            collided_plane(SimilarityPoint(s, tau), c, green, opts.kernel);
            const double weight = profile(x_ - s);
            for (std::size_t k = 0; k < w.size(); ++k)
              w[k] = weight * green[k];
          };
          std::vector<double> part(v.size());
          // Each side of s = 0 is integrated in the distance d = tau - |s|
          // to the light cone. A window reaching the cone is graded towards
          // it; one that stops short is integrated in log d. Both keep the
          // kernel's wavefront singularity, on or just beyond the end of the
          // window, from forcing deep bisection.
          const auto add = [&](double a, double b) {
            const double sign = a + b >= 0.0 ? 1.0 : -1.0;
            const double d_near = tau - std::max(sign * a, sign * b);
            const double d_far = tau - std::min(sign * a, sign * b);
            const auto at_distance = [&](double d, std::span<double> w) {
              inner(sign * (tau - d), w);
            };
            if (d_near <= light_cone_gap * tau) {
              integrate_graded(at_distance, 0.0, d_far, part, opts.space,
                               {true, false});
            } else {
              integrate_adaptive(
                [&](double y, std::span<double> w) {
                  const double d = std::exp(y);
                  at_distance(d, w);
                  for (double& x : w)
                    x *= d;
                },
                std::log(d_near), std::log(d_far), part, opts.space);
            }
            for (std::size_t k = 0; k < v.size(); ++k)
              v[k] += part[k];
          };
          double a = lo;
          for (double mark : offsets_) {
            if (mark <= a || mark >= hi)
              continue;
            add(a, mark);
            a = mark;
          }
          add(a, hi);
        },
        pieces_[i], pieces_[i + 1], piece, opts.time);
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += piece[k];
    }
  }

private:
  // Offsets s = x - x' with x' in the support and |s| <= tau.
  std::pair<double, double> window(double tau) const
  {
    return {std::max(x_ - half_width_, -tau), std::min(x_ + half_width_, tau)};
  }

  double profile(double xp) const
  {
    if (cfg_.kind == SourceKind::square)
      return 1.0;
    const double z = xp / cfg_.sigma;
    return std::exp(-z * z);
  }

  // Integral of the profile over x' = x - s for s in [lo, hi].
  double profile_mass(double lo, double hi) const
  {
    if (cfg_.kind == SourceKind::square)
      return hi - lo;
    const double sigma = cfg_.sigma;
    return 0.5 * std::sqrt(std::numbers::pi) * sigma *
           (std::erf((x_ - lo) / sigma) - std::erf((x_ - hi) / sigma));
  }

  SourceConfig cfg_;
  double x_;
  double t_;
  double half_width_ = 0.0;
  std::vector<double> pieces_;
  std::vector<double> offsets_;
};

void require_kind(const SourceConfig& cfg, SourceKind kind)
{
  if (cfg.kind != kind)
    throw DomainError("source configuration is not of kind " +
                      std::string(to_string(kind)));
}

FluxValue finite_source_flux(double x, double t, double c,
                             const SourceConfig& cfg,
                             const SolverOptions& opts)
{
  const Convolution conv(cfg, x, t);
  FluxValue f;
  f.uncollided = conv.uncollided(opts);
  conv.collided(std::span<const double>(&c, 1),
                std::span<double>(&f.collided, 1), opts);
  return f;
}

} // namespace

FluxValue square_source_flux(double x, double t, double c,
                             const SourceConfig& cfg, const SolverOptions& opts)
{
  require_kind(cfg, SourceKind::square);
  return finite_source_flux(x, t, c, cfg, opts);
}

FluxValue gaussian_source_flux(double x, double t, double c,
                               const SourceConfig& cfg,
                               const SolverOptions& opts)
{
  require_kind(cfg, SourceKind::gaussian);
  return finite_source_flux(x, t, c, cfg, opts);
}

double uncollided_flux(const SourceConfig& cfg, double coord, double t,
                       const SolverOptions& opts)
{
  switch (cfg.kind) {
  case SourceKind::plane_pulse:
    return uncollided_plane(SimilarityPoint(coord, t));
  case SourceKind::line:
    return uncollided_line(coord, t);
  default:
    return Convolution(cfg, coord, t).uncollided(opts);
  }
}

void collided_flux(const SourceConfig& cfg, double coord, double t,
                   std::span<const double> c, std::span<double> out,
                   const SolverOptions& opts)
{
  if (c.size() != out.size())
    throw DomainError("scattering-ratio batch and output differ in length");
  switch (cfg.kind) {
  case SourceKind::plane_pulse:
    collided_plane(SimilarityPoint(coord, t), c, out, opts.kernel);
    return;
  case SourceKind::line:
    line_source_collided(coord, t, c, out, opts.line);
    return;
  default:
    Convolution(cfg, coord, t).collided(c, out, opts);
  }
}

FluxValue source_flux(const SourceConfig& cfg, double coord, double t, double c,
                      const SolverOptions& opts)
{
  FluxValue f;
  f.uncollided = uncollided_flux(cfg, coord, t, opts);
  collided_flux(cfg, coord, t, std::span<const double>(&c, 1),
                std::span<double>(&f.collided, 1), opts);
  return f;
}

} // namespace uqtb
