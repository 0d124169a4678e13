#include "kpwalk/kp_right.hpp"

#include <cmath>
#include <sstream>

#include "kpwalk/errors.hpp"
#include "kpwalk/numeric.hpp"

namespace kpwalk::right {

RightSolution solve(const StepDistribution& step) {
  if (step.side() != TailSide::Right) throw InputError("kp_right: step law has a left tail");
  const double m = step.mean();
  if (!(m < 0.0)) {
    std::ostringstream msg;
    msg << "kp_right: mean step " << m << " is not negative";
    throw DriftError(msg.str());
  }
  const double r = step.r();
  const double lo = 1.0 + 1e-9;
  const double hi = (1.0 / r) * (1.0 - 1e-9);
  auto g = [&](double s) { return step.pgf(s) - 1.0; };
  double s = numeric::bisect(g, lo, hi, 1e-14);

  // f'(s) = sum x s^(x-1) F{x}; closed form on the geometric part.
  auto derivative = [&](double t) {
    const auto& fin = step.finite_part();
    double d = 0.0;
    for (std::size_t i = 0; i < fin.mass.size(); ++i) {
      const double x = static_cast<double>(fin.lo + static_cast<long>(i));
      d += x * std::pow(t, x - 1.0) * fin.mass[i];
    }
    const double denom = 1.0 - r * t;
    return d + step.xi() * (1.0 - r) * r / (denom * denom);
  };
  for (int i = 0; i < 2; ++i) {
    const double d = derivative(s);
    if (d <= 0.0) break;
    const double candidate = s - g(s) / d;
    if (candidate > lo && candidate < hi && std::abs(g(candidate)) <= std::abs(g(s))) s = candidate;
  }

  RightSolution sol;
  sol.s_star = s;
  sol.r = r;
  sol.p = 1.0 - (1.0 - 1.0 / s) / (1.0 - r);
  sol.decay = 1.0 - (1.0 - sol.p) * (1.0 - r);
  if (!(sol.p > 0.0 && sol.p < 1.0)) throw ValidationError("kp_right: p outside (0, 1)");
  return sol;
}

SupremumLaw sup_law(const RightSolution& sol, long x_max) {
  if (x_max < 0) throw InputError("kp_right: x_max must be >= 0");
  SupremumLaw law;
  law.pmf.resize(static_cast<std::size_t>(x_max) + 1);
  law.pmf[0] = 1.0 - sol.p;
  double rho_pow = 1.0;
  for (long x = 1; x <= x_max; ++x) {
    law.pmf[static_cast<std::size_t>(x)] = sol.p * rho_pow * (1.0 - sol.decay);
    rho_pow *= sol.decay;
  }
  law.tail_bound = sol.p * rho_pow;
  return law;
}

double sup_survival(const RightSolution& sol, long x) {
  if (x < 0) return 1.0;
  return sol.p * std::pow(sol.decay, static_cast<double>(x));
}

double psi_cumulative(const RightSolution& sol, long x) {
  const double q = 1.0 - sol.p;
  return 1.0 / q - sol.p / q * std::pow(sol.decay, static_cast<double>(x));
}

double step_identity_residual(const StepDistribution& step, const RightSolution& sol) {
  // y = 0 atom plus the finite negative atoms.
  double left = (1.0 - sol.p) * step.pmf(0);
  const auto& fin = step.finite_part();
  for (std::size_t i = 0; i < fin.mass.size(); ++i) {
    const long y = fin.lo + static_cast<long>(i);
    left += (1.0 - sol.p * std::pow(sol.decay, static_cast<double>(-y))) * fin.mass[i];
  }
  return left - (1.0 - sol.p);
}

}  // namespace kpwalk::right
