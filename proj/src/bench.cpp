#include "uqtb/bench.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace uqtb {

std::string_view to_string(StudyKind kind)
{
  switch (kind) {
  case StudyKind::profiles:
    return "profiles";
  case StudyKind::variance_convergence:
    return "variance_convergence";
  case StudyKind::quantile_convergence:
    return "quantile_convergence";
  case StudyKind::mass_vs_cbar:
    return "mass_vs_cbar";
  }
  return "unknown";
}

void StudyConfig::validate() const
{
  source.validate();
  if (times.empty())
    throw DomainError("at least one time is required");
  for (double t : times)
    if (!(t > 0.0) || !std::isfinite(t))
      throw DomainError("times must be positive");
  for (double x : spatial_grid) {
    if (!std::isfinite(x))
      throw DomainError("grid positions must be finite");
    if (!source.slab() && x < 0.0)
      throw DomainError("line-source radii must be non-negative");
  }
  if (spatial_grid.empty() && grid_points < 1)
    throw DomainError("grid needs at least one point");
  if (order < 0)
    throw DomainError("expansion order must be non-negative");
  for (std::size_t i = 0; i < percentile_grid.size(); ++i) {
    if (!(percentile_grid[i] > 0.0 && percentile_grid[i] < 1.0))
      throw DomainError("percentiles must lie strictly inside (0, 1)");
    if (i > 0 && !(percentile_grid[i] > percentile_grid[i - 1]))
      throw DomainError("percentiles must be strictly increasing");
  }
  switch (kind) {
  case StudyKind::profiles:
    if (n_samples < 100)
      throw DomainError("profiles need at least 100 samples");
    break;
  case StudyKind::variance_convergence:
    if (order < 1)
      throw DomainError("variance convergence sweeps N = 1..order");
    break;
  case StudyKind::quantile_convergence:
    if (sample_sweep.empty() || percentile_grid.empty())
      throw DomainError("quantile convergence needs samples and percentiles");
    for (std::size_t n : sample_sweep)
      if (n < 100)
        throw DomainError("sample counts must be at least 100");
    if (!source.slab() && probe < 0.0)
      throw DomainError("line-source radius must be non-negative");
    break;
  case StudyKind::mass_vs_cbar:
    if (cbar_grid.empty())
      throw DomainError("mass study needs a cbar grid");
    if (!(omega_fraction >= 0.0 && omega_fraction < 1.0))
      throw DomainError("uncertainty fraction must lie in [0, 1)");
    if (n_samples < 100)
      throw DomainError("median needs at least 100 samples");
    for (double c : cbar_grid)
      if (!(c > 0.0))
        throw DomainError("cbar grid must be positive");
    break;
  }
}

StudyConfig StudyConfig::profiles(SourceConfig source, double cbar)
{
  StudyConfig cfg;
  cfg.kind = StudyKind::profiles;
  cfg.source = source;
  cfg.uncertainty = UncertainScatteringRatio(cbar, 0.1 * cbar);
  return cfg;
}

StudyConfig StudyConfig::variance_convergence()
{
  StudyConfig cfg;
  cfg.kind = StudyKind::variance_convergence;
  cfg.uncertainty = UncertainScatteringRatio(1.0, 0.5);
  cfg.times = {5.0};
  cfg.order = 8;
  cfg.percentile_grid.clear();
  return cfg;
}

StudyConfig StudyConfig::quantile_convergence()
{
  StudyConfig cfg;
  cfg.kind = StudyKind::quantile_convergence;
  cfg.uncertainty = UncertainScatteringRatio(1.1, 0.275);
  cfg.times = {5.0};
  cfg.order = 8;
  cfg.sample_sweep = {100, 1'000, 10'000, 100'000, 1'000'000};
  cfg.percentile_grid.clear();
  for (int k = 1; k <= 99; ++k)
    cfg.percentile_grid.push_back(k / 100.0);
  cfg.probe = 0.0;
  return cfg;
}

StudyConfig StudyConfig::mass_vs_cbar()
{
  StudyConfig cfg;
  cfg.kind = StudyKind::mass_vs_cbar;
  cfg.times = {3.0};
  cfg.omega_fraction = 0.25;
  cfg.uncertainty = UncertainScatteringRatio(1.0, 0.25);
  cfg.percentile_grid = {0.5};
  for (int k = 0; k <= 20; ++k)
    cfg.cbar_grid.push_back(0.4 + 0.05 * k);
  return cfg;
}

std::vector<double> spatial_grid(const StudyConfig& cfg, double t)
{
  if (!cfg.spatial_grid.empty())
    return cfg.spatial_grid;
  const double reach = cfg.source.support(t);
  const double lo = cfg.source.slab() ? -reach : 0.0;
  const int n = cfg.grid_points;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = n == 1 ? 0.0 : lo + (reach - lo) * i / (n - 1);
  return grid;
}

double rmse(std::span<const double> a, std::span<const double> b)
{
  if (a.size() != b.size() || a.empty())
    throw DomainError("rmse needs two non-empty sequences of equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum / static_cast<double>(a.size()));
}

namespace {

ProjectionOptions projection_options(const StudyConfig& cfg)
{
  ProjectionOptions opts;
  opts.check_aliasing = cfg.check_aliasing;
  return opts;
}

// Re-raises a numerical failure with the grid point that produced it.
template <class F>
auto at_point(const char* name, double coord, double t, F&& f)
{
  try {
    return f();
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(fmt::format("{} at ({}, t={}): {}", name, coord, t,
                                       e.what()));
  } catch (const DomainError& e) {
    throw DomainError(fmt::format("{} at ({}, t={}): {}", name, coord, t,
                                  e.what()));
  } catch (const MonotonicityError& e) {
    throw MonotonicityError(fmt::format("{} at ({}, t={}): {}", name, coord, t,
                                        e.what()));
  }
}

std::string percentile_column(double p) { return fmt::format("q_{:g}", p); }

} // namespace

Table run_profiles(const StudyConfig& cfg, Execution exec)
{
  cfg.validate();
  Table table;
  table.columns = {cfg.source.slab() ? "x" : "r", "t", "uncollided",
                   "expectation", "std_dev", "minus_sigma", "plus_sigma"};
  for (double p : cfg.percentile_grid)
    table.columns.push_back(percentile_column(p));

  struct Job {
    double coord;
    double t;
  };
  std::vector<Job> jobs;
  for (double t : cfg.times)
    for (double x : spatial_grid(cfg, t))
      jobs.push_back({x, t});

  table.rows.resize(jobs.size());
  const ProjectionOptions popts = projection_options(cfg);
  for_each_index(jobs.size(), exec, [&](std::size_t i) {
    const auto [coord, t] = jobs[i];
    table.rows[i] = at_point("profile", coord, t, [&] {
      const ChaosExpansion exp =
        expand(cfg.source, coord, t, cfg.uncertainty, cfg.order, popts);
      const double mean = expectation(exp);
      const double sd = std::sqrt(variance(exp));
      std::vector<double> row{coord, t, exp.uncollided_offset, mean, sd,
                              mean - sd, mean + sd};
      if (!cfg.percentile_grid.empty()) {
        const auto q = empirical_quantiles(exp, cfg.n_samples,
                                           cfg.percentile_grid,
                                           Execution::serial);
        row.insert(row.end(), q.values.begin(), q.values.end());
      }
      return row;
    });
  });
  return table;
}

Table run_variance_convergence(const StudyConfig& cfg, Execution exec)
{
  cfg.validate();
  const double t = cfg.times.front();
  const auto grid = spatial_grid(cfg, t);
  const ProjectionOptions popts = projection_options(cfg);

  // variances[n][i]: order n + 1 at grid point i; oracle[i] by quadrature
  std::vector<std::vector<double>> variances(
    cfg.order, std::vector<double>(grid.size()));
  std::vector<double> oracle(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t i) {
    at_point("variance convergence", grid[i], t, [&] {
      const auto response =
        source_response(cfg.source, grid[i], t, cfg.uncertainty);
      oracle[i] = direct_moments(response, cfg.uncertainty).variance;
      for (int n = 1; n <= cfg.order; ++n)
        variances[n - 1][i] = variance(project(response, n, popts));
      return 0;
    });
  });

  Table table;
  table.columns = {"N", "rmse"};
  for (int n = 1; n <= cfg.order; ++n)
    table.rows.push_back(
      {static_cast<double>(n), rmse(variances[n - 1], oracle)});
  return table;
}

Table run_quantile_convergence(const StudyConfig& cfg, Execution exec)
{
  cfg.validate();
  const double t = cfg.times.front();
  const double x = cfg.probe;
  const auto& grid = cfg.percentile_grid;

  return at_point("quantile convergence", x, t, [&] {
    const ChaosExpansion exp = expand(cfg.source, x, t, cfg.uncertainty,
                                      cfg.order, projection_options(cfg));
    const double offset = exp.uncollided_offset;
    const QuantileOracle oracle(
      [&](double c) {
        double collided = 0.0;
        collided_flux(cfg.source, x, t, std::span<const double>(&c, 1),
                      std::span<double>(&collided, 1));
        return offset + collided;
      },
      cfg.uncertainty);
    std::vector<double> exact(grid.size());
    for_each_index(grid.size(), exec,
                   [&](std::size_t k) { exact[k] = oracle(grid[k]); });

    Table table;
    table.columns = {"n_samples", "rmse"};
    for (std::size_t n : cfg.sample_sweep) {
      const auto q = empirical_quantiles(exp, n, grid, exec);
      table.rows.push_back({static_cast<double>(n), rmse(q.values, exact)});
    }
    return table;
  });
}

double mass_analytic(double t, double c) { return std::exp(t * (c - 1.0)); }

namespace {

// Coordinates in (0, reach) where a slab flux has a kink: the source edge
// and, once emission has stopped, the edges of the trailing light cone.
std::vector<double> slab_breaks(const SourceConfig& source, double t)
{
  const double reach = source.support(t);
  std::vector<double> marks{0.0, reach};
  if (source.kind == SourceKind::square) {
    const double x0 = source.x0;
    const double quiet = t - source.t0;
    std::vector<double> kinks{x0};
    if (quiet > 0.0) {
      kinks.push_back(std::abs(quiet - x0));
      kinks.push_back(quiet + x0);
    }
    for (double k : kinks)
      if (k > 0.0 && k < reach)
        marks.push_back(k);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  return marks;
}

// Integrates f(coord, values) over the signal support. Slab kinds use
// symmetry and graded pieces between kinks; the line source carries the
// 2 pi r area weight and has r = t (1 - w^2) so nodes cluster at the
// wavefront.
template <class F>
void integrate_support(const SourceConfig& source, double t, std::size_t width,
                       std::span<double> out, F&& f)
{
  const AdaptiveOptions opts{16, 1e-9, 1e-300, 4096};
  std::fill(out.begin(), out.end(), 0.0);
  if (source.slab()) {
    const auto marks = slab_breaks(source, t);
    std::vector<double> part(width);
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
      integrate_graded(
        [&](double x, std::span<double> v) {
          f(x, v);
          for (double& e : v)
            e *= 2.0;
        },
        marks[i], marks[i + 1], part, opts);
      for (std::size_t k = 0; k < width; ++k)
        out[k] += part[k];
    }
    return;
  }
  const double reach = source.support(t);
  integrate_adaptive(
    [&](double w, std::span<double> v) {
      const double coord = reach * (1.0 - (1.0 - w) * (1.0 - w));
      const double jac = 2.0 * reach * (1.0 - w);
      f(coord, v);
      for (std::size_t k = 0; k < width; ++k)
        v[k] *= 2.0 * std::numbers::pi * coord * jac;
    },
    0.0, 1.0, out, opts);
}

} // namespace

double uncollided_mass(const SourceConfig& source, double t,
                       const SolverOptions& opts)
{
  if (source.kind == SourceKind::plane_pulse) {
    if (!(t > 0.0))
      throw DomainError("time must be positive");
    // Constant exp(-t) / (2t) over [-t, t]
    return std::exp(-t);
  }
  double out = 0.0;
  integrate_support(source, t, 1, std::span<double>(&out, 1),
                    [&](double coord, std::span<double> v) {
                      v[0] = uncollided_flux(source, coord, t, opts);
                    });
  return out;
}

void collided_mass(const SourceConfig& source, double t,
                   std::span<const double> c, std::span<double> out,
                   const SolverOptions& opts)
{
  if (c.size() != out.size())
    throw DomainError("scattering-ratio batch and output differ in length");
  integrate_support(source, t, c.size(), out,
                    [&](double coord, std::span<double> v) {
                      collided_flux(source, coord, t, c, v, opts);
                    });
}

double mass_numeric(double t, double c, const SourceConfig& source,
                    const SolverOptions& opts)
{
  double collided = 0.0;
  collided_mass(source, t, std::span<const double>(&c, 1),
                std::span<double>(&collided, 1), opts);
  return uncollided_mass(source, t, opts) + collided;
}

ChaosExpansion expand_mass(const SourceConfig& source, double t,
                           const UncertainScatteringRatio& unc, int order,
                           const ProjectionOptions& popts,
                           const SolverOptions& sopts)
{
  ChaosExpansion exp = project(
    [&](std::span<const double> theta, std::span<double> out) {
      std::vector<double> c(theta.size());
      for (std::size_t i = 0; i < theta.size(); ++i)
        c[i] = unc.realize(theta[i]);
      collided_mass(source, t, c, out, sopts);
    },
    order, popts);
  exp.uncollided_offset = uncollided_mass(source, t, sopts);
  exp.location = {0.0, t};
  exp.source = source;
  exp.uncertainty = unc;
  return exp;
}

Table run_mass_study(const StudyConfig& cfg, Execution exec)
{
  cfg.validate();
  const double t = cfg.times.front();
  const ProjectionOptions popts = projection_options(cfg);
  const double half[] = {0.5};

  Table table;
  table.columns = {"cbar",       "nominal",    "expectation",
                   "minus_sigma", "plus_sigma", "median"};
  table.rows.resize(cfg.cbar_grid.size());
  for_each_index(cfg.cbar_grid.size(), exec, [&](std::size_t i) {
    const double cbar = cfg.cbar_grid[i];
    table.rows[i] = at_point("mass study, cbar", cbar, t, [&] {
      const UncertainScatteringRatio unc(cbar, cfg.omega_fraction * cbar);
      const ChaosExpansion exp = expand_mass(cfg.source, t, unc, cfg.order,
                                             popts);
      const double nominal = cfg.source.kind == SourceKind::plane_pulse
                               ? mass_analytic(t, cbar)
                               : mass_numeric(t, cbar, cfg.source);
      const double mean = expectation(exp);
      const double sd = std::sqrt(variance(exp));
      const auto median =
        empirical_quantiles(exp, cfg.n_samples, half, Execution::serial);
      return std::vector<double>{cbar,      nominal,   mean,
                                 mean - sd, mean + sd, median.values[0]};
    });
  });
  return table;
}

Table run_study(const StudyConfig& cfg, Execution exec)
{
  switch (cfg.kind) {
  case StudyKind::profiles:
    return run_profiles(cfg, exec);
  case StudyKind::variance_convergence:
    return run_variance_convergence(cfg, exec);
  case StudyKind::quantile_convergence:
    return run_quantile_convergence(cfg, exec);
  case StudyKind::mass_vs_cbar:
    return run_mass_study(cfg, exec);
  }
  throw DomainError("unknown study kind");
}

} // namespace uqtb
