#pragma once

// Independent reference computations used only by the tests. None of these
// share an integration path with the code they check.

#include <functional>
#include <span>
#include <vector>

#include "uqtb/sources.h"

namespace uqtb::oracle {

//! Composite Gauss-Legendre on [a, b] with `panels` equal panels, each mapped
//! through the smoothstep 3v^2 - 2v^3 applied twice so nodes cluster at both
//! panel ends (tames endpoint log singularities).
double graded(const std::function<double(double)>& f, double a, double b,
              int panels, int points);

//! Plain composite Gauss-Legendre.
double composite(const std::function<double(double)>& f, double a, double b,
                 int panels, int points);

//! Collided plane-pulse flux written with the sec^2(u/2) xi^2 integrand and
//! xi = (log q + iu) / (eta + i tan(u/2)), evaluated in long double on a
//! graded composite rule. Shares no code with the library kernel.
double collided_plane_sec2(double x, double t, double c, int panels = 16,
                           int points = 48);

//! Five-point central difference.
double central_difference(const std::function<double(double)>& f, double x,
                          double h);

//! Finite source convolved in the opposite order from the library: source
//! position x' outermost, emission lag innermost.
FluxValue brute_force_source(const SourceConfig& cfg, double x, double t,
                             double c);

//! int dy phi_line(sqrt(x^2 + y^2), t), which must reproduce the plane-pulse
//! flux at x.
double abel_projection(const std::function<double(double r)>& line, double x,
                       double t);

//! (1/2) int_{-1}^{1} g(theta) dtheta and the matching variance, by a fixed
//! 96-point rule.
struct FixedMoments {
  double mean;
  double variance;
};
FixedMoments fixed_moments(const std::function<double(double)>& g);

//! E[exp(t (c - 1))] for c uniform on [cbar - w, cbar + w].
double expected_mass(double t, double cbar, double w);

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace uqtb::oracle
