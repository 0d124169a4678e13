#include "kpwalk/tandem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kpwalk/errors.hpp"

namespace kpwalk::tandem {

TandemParams TandemParams::make(double alpha, double beta, double gamma) {
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) {
    throw InputError("tandem: alpha, beta and gamma must be positive");
  }
  TandemParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.a = beta / alpha;
  p.r = alpha / (alpha + gamma);
  p.b = alpha > beta ? gamma / (alpha - beta) : std::numeric_limits<double>::infinity();
  if (!(p.a < 1.0)) {
    std::ostringstream msg;
    msg << "tandem: queue-1 load a = " << p.a << " >= 1, busy period is defective";
    throw DriftError(msg.str());
  }
  return p;
}

void TandemParams::require_stable() const {
  if (!(b < 1.0)) {
    std::ostringstream msg;
    msg << "tandem: load b = " << b << " >= 1 (beta + gamma >= alpha)";
    throw DriftError(msg.str());
  }
}

namespace {

void require_load(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream msg;
    msg << "busy period: load a = " << a << " must lie in (0, 1)";
    throw DriftError(msg.str());
  }
}

double busy_period_term(double a, long k) {
  const double kd = static_cast<double>(k);
  if (k <= 50) {
    // C(2k-1, k) / (2k-1) = Catalan(k-1)
    double catalan = 1.0;
    for (long j = 1; j < k; ++j) catalan *= 2.0 * (2.0 * static_cast<double>(j) - 1.0) / (static_cast<double>(j) + 1.0);
    return catalan * std::pow(a, kd - 1.0) / std::pow(1.0 + a, 2.0 * kd - 1.0);
  }
  const double log_binom = std::lgamma(2.0 * kd) - std::lgamma(kd + 1.0) - std::lgamma(kd);
  return std::exp(log_binom - std::log(2.0 * kd - 1.0) + (kd - 1.0) * std::log(a) -
                  (2.0 * kd - 1.0) * std::log1p(a));
}

}  // namespace

IntegerPMF busy_period_pmf(double a, long K) {
  require_load(a);
  if (K < 1) throw InputError("busy period: K must be >= 1");
  IntegerPMF pmf;
  pmf.lo = 1;
  pmf.hi = K;
  pmf.mass.resize(static_cast<std::size_t>(K));
  for (long k = 1; k <= K; ++k) pmf.mass[static_cast<std::size_t>(k - 1)] = busy_period_term(a, k);
  pmf.right_tail_mass = std::max(0.0, 1.0 - pmf.materialized_mass());
  return pmf;
}

long busy_period_cutoff(double a, double eps) {
  require_load(a);
  // P(N = k+1) / P(N = k) < c = 4a/(1+a)^2, so the tail after k is at most
  // P(N = k) c / (1 - c).
  const double c = 4.0 * a / ((1.0 + a) * (1.0 + a));
  long k = 1;
  while (busy_period_term(a, k) * c / (1.0 - c) >= eps && k < 1000000) ++k;
  return k;
}

double U_eval(double a, double s) {
  require_load(a);
  const double radius = 1.0 + (1.0 - a) * (1.0 - a) / (4.0 * a);
  if (!(std::abs(s) < radius)) {
    std::ostringstream msg;
    msg << "U: |s| = " << std::abs(s) << " outside the convergence radius " << radius;
    throw DomainError(msg.str());
  }
  const double c = 4.0 * a / ((1.0 + a) * (1.0 + a));
  return (1.0 + a) / (2.0 * a) * (1.0 - std::sqrt(1.0 - c * s));
}

double V_eval(double r, double s) {
  if (!(r > 0.0 && r < 1.0)) throw InputError("V: r must lie in (0, 1)");
  if (!(std::abs(s) < 1.0 / r)) {
    std::ostringstream msg;
    msg << "V: |s| = " << std::abs(s) << " outside the convergence radius " << 1.0 / r;
    throw DomainError(msg.str());
  }
  return (1.0 - r) / (1.0 - r * s);
}

PowerSeries U_series(double a, int K) {
  require_load(a);
  const double c = 4.0 * a / ((1.0 + a) * (1.0 + a));
  const PowerSeries inner = PowerSeries::constant(1.0, K) - c * PowerSeries::monomial(1, K);
  return ((1.0 + a) / (2.0 * a)) * (PowerSeries::constant(1.0, K) - series_sqrt(inner));
}

namespace {

// Law of -M on [-depth, 0] with P(M = m) = (1-r) r^m.
IntegerPMF negated_dissociations(double r, double eps) {
  long depth = 0;
  while (std::pow(r, static_cast<double>(depth + 1)) >= eps) ++depth;
  IntegerPMF m;
  m.lo = 0;
  m.hi = depth;
  m.mass.resize(static_cast<std::size_t>(depth) + 1);
  for (long k = 0; k <= depth; ++k) m.mass[static_cast<std::size_t>(k)] = (1.0 - r) * std::pow(r, static_cast<double>(k));
  m.right_tail_mass = std::pow(r, static_cast<double>(depth + 1));
  return negate(m);
}

struct Convolved {
  IntegerPMF law;
  double deviation;
};

Convolved convolve_step(const TandemParams& params) {
  constexpr double kEps = 1e-17;
  const IntegerPMF n = busy_period_pmf(params.a, busy_period_cutoff(params.a, kEps));
  const IntegerPMF law = convolve(n, negated_dissociations(params.r, kEps));
  const double xi = U_eval(params.a, params.r);
  double deviation = 0.0;
  double cdf = law.left_tail_mass;
  for (long x = law.lo; x <= 0; ++x) {
    cdf += law.at(x);
    if (x >= -10) {
      deviation = std::max(deviation, std::abs(cdf - xi * std::pow(params.r, static_cast<double>(-x))));
    }
  }
  return {law, deviation};
}

}  // namespace

double left_tail_deviation(const TandemParams& params) {
  return convolve_step(params).deviation;
}

StepDistribution build_step(const TandemParams& params, double tol) {
  params.require_stable();
  const auto [law, deviation] = convolve_step(params);
  if (deviation > tol) {
    std::ostringstream msg;
    msg << "tandem: convolved law deviates from the geometric left tail by " << deviation;
    throw ValidationError(msg.str());
  }
  const double xi = U_eval(params.a, params.r);
  IntegerPMF positive;
  positive.lo = 1;
  positive.hi = std::max(1L, law.hi);
  positive.mass.assign(static_cast<std::size_t>(positive.hi), 0.0);
  for (long x = 1; x <= law.hi; ++x) positive.mass[static_cast<std::size_t>(x - 1)] = law.at(x);
  positive.right_tail_mass = std::max(0.0, 1.0 - xi - positive.materialized_mass());
  return step_from_left_tail(xi, params.r, positive);
}

TandemReport analyze(const TandemParams& params, int K, const left::SolveOptions& options) {
  params.require_stable();
  TandemReport report{params, U_eval(params.a, params.r), build_step(params), {}, PowerSeries({1.0}), 0.0, 0.0};
  report.tail_deviation = left_tail_deviation(params);
  report.solution = left::solve(report.step, K, options);

  // M(s) = (1 - zeta - (1-r)/(1-a)) / (1 - zeta - (1-r) s (1 - U(s)) / (1 - s))
  const double zeta = report.solution.zeta;
  const double r = params.r;
  const PowerSeries u = U_series(params.a, K);
  const PowerSeries ones = PowerSeries::geometric(1.0, K);
  const PowerSeries survival = series_mul(PowerSeries::constant(1.0, K) - u, ones);  // P(N > k)
  const PowerSeries denominator = PowerSeries::constant(1.0 - zeta, K) -
                                  (1.0 - r) * series_mul(PowerSeries::monomial(1, K), survival);
  report.simplified_mgf = (1.0 - zeta - (1.0 - r) / (1.0 - params.a)) * series_reciprocal(denominator);
  for (int k = 0; k <= K; ++k) {
    report.route_gap = std::max(report.route_gap, std::abs(report.simplified_mgf[k] - report.solution.mgf[k]));
  }
  if (report.route_gap > 1e-8) {
    std::ostringstream msg;
    msg << "tandem: simplified and generic M(s) differ by " << report.route_gap;
    throw ValidationError(msg.str());
  }
  return report;
}

}  // namespace kpwalk::tandem
