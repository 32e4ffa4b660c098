#include "uqtb/pce.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "uqtb/table.h"

namespace uqtb {

UncertainScatteringRatio::UncertainScatteringRatio(double mean,
                                                   double half_width)
  : mean_(mean), half_width_(half_width)
{
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw DomainError("mean scattering ratio must be positive");
  if (!(half_width >= 0.0) || !std::isfinite(half_width))
    throw DomainError("uncertainty half-width must be non-negative");
  if (!(mean - half_width > 0.0))
    throw DomainError("scattering ratio interval must stay positive");
}

double UncertainScatteringRatio::realize(double theta) const
{
  if (!(theta >= -1.0 && theta <= 1.0))
    throw DomainError("theta must lie in [-1, 1], got " + std::to_string(theta));
  return mean_ + half_width_ * theta;
}

BatchResponse batch_response(std::function<double(double)> fn, Execution exec)
{
  return [fn = std::move(fn), exec](std::span<const double> theta,
                                    std::span<double> out) {
    for_each_index(theta.size(), exec,
                   [&](std::size_t i) { out[i] = fn(theta[i]); });
  };
}

BatchResponse source_response(const SourceConfig& cfg, double coord, double t,
                              const UncertainScatteringRatio& unc,
                              const SolverOptions& opts)
{
  return [=](std::span<const double> theta, std::span<double> out) {
    std::vector<double> c(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
      c[i] = unc.realize(theta[i]);
    collided_flux(cfg, coord, t, c, out, opts);
  };
}

int default_quad_order(int order) { return std::max(2 * order, 16); }

void legendre_values(double x, std::span<double> out)
{
  if (out.empty())
    return;
  out[0] = 1.0;
  if (out.size() > 1)
    out[1] = x;
  for (std::size_t j = 2; j < out.size(); ++j)
    out[j] = ((2.0 * j - 1.0) * x * out[j - 1] - (j - 1.0) * out[j - 2]) / j;
}

namespace {

std::vector<double> project_at(const BatchResponse& response, int order,
                               int quad_order)
{
  const QuadratureRule& rule = gauss_legendre(quad_order);
  std::vector<double> values(rule.order());
  response(rule.nodes, values);

  std::vector<double> coeffs(order + 1, 0.0);
  // A response that does not vary over the nodes (zero half-width) is exactly
  // its constant term.
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    coeffs[0] = values.front();
    return coeffs;
  }

  std::vector<double> basis(order + 1);
  for (std::size_t i = 0; i < rule.order(); ++i) {
    legendre_values(rule.nodes[i], basis);
    for (int j = 0; j <= order; ++j)
      coeffs[j] += rule.weights[i] * values[i] * basis[j];
  }
  for (int j = 0; j <= order; ++j)
    coeffs[j] *= 0.5 * (2.0 * j + 1.0);
  return coeffs;
}

} // namespace

ChaosExpansion project(const BatchResponse& response, int order,
                       const ProjectionOptions& opts)
{
  if (order < 0)
    throw DomainError("expansion order must be non-negative");
  const int quad_order =
    opts.quad_order > 0 ? opts.quad_order : default_quad_order(order);
  if (quad_order < order + 1)
    throw DomainError("projection needs at least N + 1 quadrature nodes");

  ChaosExpansion exp;
  exp.coeffs = project_at(response, order, quad_order);
  if (opts.check_aliasing) {
    const auto doubled = project_at(response, order, 2 * quad_order);
    for (int j = 0; j <= order; ++j)
      if (std::abs(doubled[j] - exp.coeffs[j]) > opts.aliasing_tol)
        exp.aliasing = true;
  }
  return exp;
}

ChaosExpansion expand(const SourceConfig& cfg, double coord, double t,
                      const UncertainScatteringRatio& unc, int order,
                      const ProjectionOptions& popts,
                      const SolverOptions& sopts)
{
  ChaosExpansion exp =
    project(source_response(cfg, coord, t, unc, sopts), order, popts);
  exp.uncollided_offset = uncollided_flux(cfg, coord, t, sopts);
  exp.location = {coord, t};
  exp.source = cfg;
  exp.uncertainty = unc;
  return exp;
}

double evaluate(const ChaosExpansion& exp, double theta)
{
  if (!(theta >= -1.0 && theta <= 1.0))
    throw DomainError("theta must lie in [-1, 1], got " + std::to_string(theta));
  // Clenshaw would also do; the forward recurrence is stable on [-1, 1].
  double sum = exp.coeffs.empty() ? 0.0 : exp.coeffs[0];
  double p0 = 1.0;
  double p1 = theta;
  for (std::size_t j = 1; j < exp.coeffs.size(); ++j) {
    sum += exp.coeffs[j] * p1;
    const double p2 = ((2.0 * j + 1.0) * theta * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return exp.uncollided_offset + sum;
}

double expectation(const ChaosExpansion& exp)
{
  return exp.uncollided_offset + (exp.coeffs.empty() ? 0.0 : exp.coeffs[0]);
}

double variance(const ChaosExpansion& exp)
{
  double var = 0.0;
  for (std::size_t j = 1; j < exp.coeffs.size(); ++j)
    var += exp.coeffs[j] * exp.coeffs[j] / (2.0 * j + 1.0);
  return var;
}

namespace {

const char* position_name(const ChaosExpansion& exp)
{
  return exp.source.slab() ? "x" : "r";
}

} // namespace

std::string expansion_csv_header(const ChaosExpansion& exp)
{
  std::string out = "source,";
  out += position_name(exp);
  out += ",t,cbar,omega1,N";
  for (int j = 0; j <= exp.order(); ++j)
    out += ",a" + std::to_string(j);
  out += ",phi_u";
  return out;
}

std::string expansion_csv_row(const ChaosExpansion& exp)
{
  std::string out(to_string(exp.source.kind));
  for (double v : {exp.location.coord, exp.location.time,
                   exp.uncertainty.mean(), exp.uncertainty.half_width()})
    out += "," + format_number(v);
  out += "," + std::to_string(exp.order());
  for (double a : exp.coeffs)
    out += "," + format_number(a);
  out += "," + format_number(exp.uncollided_offset);
  return out;
}

nlohmann::ordered_json expansion_json(const ChaosExpansion& exp)
{
  nlohmann::ordered_json j;
  j["source"] = std::string(to_string(exp.source.kind));
  j[position_name(exp)] = exp.location.coord;
  j["t"] = exp.location.time;
  j["cbar"] = exp.uncertainty.mean();
  j["omega1"] = exp.uncertainty.half_width();
  j["N"] = exp.order();
  for (int i = 0; i <= exp.order(); ++i)
    j["a" + std::to_string(i)] = exp.coeffs[i];
  j["phi_u"] = exp.uncollided_offset;
  return j;
}

} // namespace uqtb
