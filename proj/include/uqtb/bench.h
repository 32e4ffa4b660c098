#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uqtb/pce.h"
#include "uqtb/stats.h"
#include "uqtb/table.h"

namespace uqtb {

enum class StudyKind {
  profiles,
  variance_convergence,
  quantile_convergence,
  mass_vs_cbar
};

std::string_view to_string(StudyKind kind);

//! Everything needed to reproduce one study. The factory functions give the
//! standard configuration of each study kind.
struct StudyConfig {
  StudyKind kind = StudyKind::profiles;
  SourceConfig source;
  UncertainScatteringRatio uncertainty{1.0, 0.1};
  std::vector<double> times{1.0, 5.0};
  //! Explicit positions; when empty, grid_points uniform points over the
  //! support at each time ([0, support] for the line source).
  std::vector<double> spatial_grid;
  int grid_points = 201;
  int order = 6;
  std::size_t n_samples = 1'000'000;
  std::vector<double> percentile_grid{0.05, 0.25, 0.5, 0.75, 0.95};
  std::vector<std::size_t> sample_sweep;
  std::vector<double> cbar_grid;
  double omega_fraction = 0.25; // mass study: half-width = fraction * cbar
  double probe = 0.0;           // quantile convergence position
  bool check_aliasing = true;

  //! Throws DomainError on an inconsistent configuration.
  void validate() const;

  static StudyConfig profiles(SourceConfig source = SourceConfig::plane_pulse(),
                              double cbar = 1.0);
  static StudyConfig variance_convergence();
  static StudyConfig quantile_convergence();
  static StudyConfig mass_vs_cbar();
};

//! Positions sampled at time t.
std::vector<double> spatial_grid(const StudyConfig& cfg, double t);

//! Root of the mean squared difference.
double rmse(std::span<const double> a, std::span<const double> b);

//! Columns: x (r for the line source), t, uncollided, expectation, std_dev,
//! minus_sigma, plus_sigma, then one q_<p> column per percentile.
Table run_profiles(const StudyConfig& cfg, Execution exec = Execution::parallel);

//! Columns: N, rmse. One row per N = 1..order; the RMSE runs over the
//! spatial grid at times[0] against direct quadrature of the variance.
Table run_variance_convergence(const StudyConfig& cfg,
                               Execution exec = Execution::parallel);

//! Columns: n_samples, rmse. RMSE over the percentile grid between sampled
//! quantiles of the expansion and the monotone-response quantiles.
Table run_quantile_convergence(const StudyConfig& cfg,
                               Execution exec = Execution::parallel);

//! Columns: cbar, nominal, expectation, minus_sigma, plus_sigma, median.
Table run_mass_study(const StudyConfig& cfg,
                     Execution exec = Execution::parallel);

Table run_study(const StudyConfig& cfg, Execution exec = Execution::parallel);

//! exp(t (c - 1)): total plane-pulse mass.
double mass_analytic(double t, double c);

//! Spatial integral of the uncollided flux over the signal support.
double uncollided_mass(const SourceConfig& source, double t,
                       const SolverOptions& opts = {});

//! Spatial integral of the collided flux for a batch of c.
void collided_mass(const SourceConfig& source, double t,
                   std::span<const double> c, std::span<double> out,
                   const SolverOptions& opts = {});

//! Total mass by spatial quadrature of the flux (slab kinds integrate over x,
//! the line source over the plane with weight 2 pi r).
double mass_numeric(double t, double c, const SourceConfig& source,
                    const SolverOptions& opts = {});

//! Expansion of the total mass in theta; the offset is the uncollided mass.
ChaosExpansion expand_mass(const SourceConfig& source, double t,
                           const UncertainScatteringRatio& unc, int order,
                           const ProjectionOptions& popts = {},
                           const SolverOptions& sopts = {});

} // namespace uqtb
