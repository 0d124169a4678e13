#pragma once

#include "kpwalk/dist.hpp"

/// Supremum law of a negative-drift walk whose right tail is geometric,
/// P(X >= x) = xi r^x for x >= 0. The ladder-height measure is then p times
/// a geometric law, and
///
///   P(sup S_n > x) = p * rho^x,   rho = 1 - (1 - p)(1 - r) = 1 / s*,
///
/// where s* is the unique root of E[s^X] = 1 in (1, 1/r).
namespace kpwalk::right {

struct RightSolution {
  double s_star = 0.0;
  double p = 0.0;
  double decay = 0.0;  // rho
  double r = 0.0;
};

/// Bisection on the convex pgf (f(1) = 1, f -> infinity at 1/r) followed by
/// two safeguarded Newton steps.
RightSolution solve(const StepDistribution& step);

/// pmf[0] = 1 - p, pmf[x] = p rho^(x-1) (1 - rho); tail_bound = p rho^x_max.
SupremumLaw sup_law(const RightSolution& sol, long x_max);

/// P(sup > x) = p rho^x.
double sup_survival(const RightSolution& sol, long x);

/// psi[0, x] = 1/(1-p) - p/(1-p) rho^x, the renewal measure of the ladder
/// heights.
double psi_cumulative(const RightSolution& sol, long x);

/// Left side of sum_{y<=0} (1 - p rho^-y) F{y} = 1 - p, evaluated with the
/// solved p; returns the residual (left - (1 - p)).
double step_identity_residual(const StepDistribution& step, const RightSolution& sol);

}  // namespace kpwalk::right
