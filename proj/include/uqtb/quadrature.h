#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uqtb/error.h"

namespace uqtb {

//! Nodes and positive weights of an n-point rule on an interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }

  //! Affine image of this rule (assumed to live on [-1, 1]) on [a, b].
  QuadratureRule mapped(double a, double b) const;
};

//! n-point Gauss-Legendre rule on [-1, 1], nodes ascending. Rules are cached
//! per thread, so the reference stays valid for the lifetime of the calling
//! thread.
const QuadratureRule& gauss_legendre(int n);

struct AdaptiveOptions {
  int order = 64;         // Gauss-Legendre points per panel
  double rel_tol = 1e-10; // per component, relative to the whole-interval size
  double abs_tol = 1e-15;
  int max_panels = 1024;
};

//! Adaptive Gauss-Legendre by local bisection for vector-valued integrands.
//!
//! `f(x, values)` receives every abscissa of one panel at once and writes
//! component k at abscissa i into values[i * width + k], where width is the
//! length of `result`. A panel is accepted once the estimate from its two
//! halves differs from the parent estimate by no more than its share (by
//! length) of max(abs_tol, rel_tol * |I_k|) in every component. Panels are
//! processed left to right, so the summation order depends only on the inputs.
template <class F>
void integrate_adaptive_panels(F&& f, double a, double b,
                               std::span<double> result,
                               const AdaptiveOptions& opts = {})
{
  const std::size_t width = result.size();
  std::fill(result.begin(), result.end(), 0.0);
  if (a == b || width == 0)
    return;

  const QuadratureRule& rule = gauss_legendre(opts.order);
  const std::size_t n = rule.order();
  std::vector<double> abscissas(n);
  std::vector<double> values(n * width);

  auto panel = [&](double lo, double hi, double* out) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < n; ++i)
      abscissas[i] = mid + half * rule.nodes[i];
    f(std::span<const double>(abscissas), std::span<double>(values));
    std::fill(out, out + width, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = rule.weights[i];
      for (std::size_t k = 0; k < width; ++k)
        out[k] += w * values[i * width + k];
    }
    for (std::size_t k = 0; k < width; ++k)
      out[k] *= half;
  };

  struct Pending {
    double lo;
    double hi;
    std::vector<double> estimate;
  };

  std::vector<double> scale(width);
  std::vector<Pending> stack;
  stack.push_back({a, b, std::vector<double>(width)});
  panel(a, b, stack.back().estimate.data());
  for (std::size_t k = 0; k < width; ++k)
    scale[k] = std::abs(stack.back().estimate[k]);

  std::vector<double> left(width), right(width);
  const double length = b - a;
  bool root = true;
  int panels = 1;

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    panel(p.lo, mid, left.data());
    panel(mid, p.hi, right.data());

    if (root) {
      for (std::size_t k = 0; k < width; ++k)
        scale[k] = std::max(scale[k], std::abs(left[k] + right[k]));
      root = false;
    }

    const double share = (p.hi - p.lo) / length;
    bool converged = true;
    for (std::size_t k = 0; k < width && converged; ++k) {
      const double tol = std::max(opts.abs_tol, opts.rel_tol * scale[k]) * share;
      converged = std::abs(left[k] + right[k] - p.estimate[k]) <= tol;
    }

    if (converged) {
      for (std::size_t k = 0; k < width; ++k)
        result[k] += left[k] + right[k];
      continue;
    }
    if (++panels > opts.max_panels)
      throw ConvergenceError("adaptive Gauss-Legendre exceeded " +
                             std::to_string(opts.max_panels) + " panels on [" +
                             std::to_string(a) + ", " + std::to_string(b) + "]");
    stack.push_back({mid, p.hi, right});
    stack.push_back({p.lo, mid, left});
  }
}

//! Pointwise form: `f(x, values)` fills the components at a single abscissa.
template <class F>
void integrate_adaptive(F&& f, double a, double b, std::span<double> result,
                        const AdaptiveOptions& opts = {})
{
  const std::size_t width = result.size();
  integrate_adaptive_panels(
    [&](std::span<const double> x, std::span<double> values) {
      for (std::size_t i = 0; i < x.size(); ++i)
        f(x[i], values.subspan(i * width, width));
    },
    a, b, result, opts);
}

//! Scalar convenience wrapper around the vector form.
template <class F>
double integrate_adaptive_scalar(F&& f, double a, double b,
                                 const AdaptiveOptions& opts = {})
{
  double out = 0.0;
  integrate_adaptive(
    [&](double x, std::span<double> v) { v[0] = f(x); }, a, b,
    std::span<double>(&out, 1), opts);
  return out;
}

//! Which ends of an interval get nodes clustered towards them.
struct Grading {
  bool left = true;
  bool right = true;
};

//! Maps v in [0, 1] onto [0, 1] with g'(v) vanishing quadratically at every
//! graded end; an ungraded end keeps unit slope. Returns {g, g'}.
inline std::pair<double, double> grading_map(double v, Grading grade)
{
  if (grade.left && grade.right)
    return {v * v * v * (10.0 + v * (-15.0 + 6.0 * v)),
            30.0 * v * v * (1.0 - v) * (1.0 - v)};
  if (grade.left)
    return {v * v * v * (3.0 - 2.0 * v), v * v * (9.0 - 8.0 * v)};
  if (grade.right) {
    const double w = 1.0 - v;
    return {1.0 - w * w * w * (3.0 - 2.0 * w), w * w * (9.0 - 8.0 * w)};
  }
  return {v, 1.0};
}

//! integrate_adaptive after the grading map, for integrands with kinks or
//! weak singularities at the interval ends.
template <class F>
void integrate_graded(F&& f, double a, double b, std::span<double> out,
                      const AdaptiveOptions& opts = {}, Grading grade = {})
{
  const double len = b - a;
  integrate_adaptive(
    [&](double v, std::span<double> values) {
      const auto [g, dg] = grading_map(v, grade);
      f(a + len * g, values);
      for (double& x : values)
        x *= len * dg;
    },
    0.0, 1.0, out, opts);
}

template <class F>
double integrate_graded_scalar(F&& f, double a, double b,
                               const AdaptiveOptions& opts = {})
{
  double out = 0.0;
  integrate_graded([&](double x, std::span<double> v) { v[0] = f(x); }, a, b,
                   std::span<double>(&out, 1), opts);
  return out;
}

} // namespace uqtb
