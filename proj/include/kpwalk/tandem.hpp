#pragma once

#include "kpwalk/dist.hpp"
#include "kpwalk/kp_left.hpp"
#include "kpwalk/series.hpp"

/// Two coupled single-server queues. Queue 1 is M/M/1; its departures join
/// queue 2, whose server works only while server 1 is idle.
///
/// Rates follow the mean convention: alpha, beta and gamma are the MEAN
/// inter-arrival, server-1 service and server-2 service times (clock rates
/// 1/alpha, 1/beta, 1/gamma). Then a = beta/alpha is the load of queue 1,
/// r = alpha/(alpha+gamma) is the chance that server 2 finishes before the
/// next arrival, and b = gamma/(alpha-beta) is the load of the induced queue.
namespace kpwalk::tandem {

struct TandemParams {
  double alpha = 1.0;
  double beta = 0.3;
  double gamma = 0.5;
  double a = 0.3;
  double r = 2.0 / 3.0;
  double b = 5.0 / 7.0;

  /// Validates positivity and a < 1; b >= 1 is reported by build_step/analyze.
  static TandemParams make(double alpha, double beta, double gamma);
  /// Throws DriftError with the offending load when b >= 1.
  void require_stable() const;
};

/// Busy-period customer count: P(N = k) = C(2k-1, k) / (2k-1) *
/// a^(k-1) / (1+a)^(2k-1) on 1..K, the rest in the right tail.
IntegerPMF busy_period_pmf(double a, long K);

/// Smallest K with certified right-tail mass below `eps`.
long busy_period_cutoff(double a, double eps);

/// U(s) = E[s^N] = (1+a)/(2a) (1 - sqrt(1 - 4as/(1+a)^2)).
double U_eval(double a, double s);
/// V(s) = E[s^M] = (1-r)/(1-rs).
double V_eval(double r, double s);
/// Taylor coefficients of U by power-series square root.
PowerSeries U_series(double a, int K);

/// Law of X = N - M, with the left tail P(X <= x) = U(r) r^-x checked on
/// x = 0..-10 against a direct convolution before it is stored symbolically.
StepDistribution build_step(const TandemParams& params, double tol = 1e-10);

/// Max over x in [-10, 0] of |P(X <= x) - U(r) r^-x|, with P(X <= x) from
/// the convolution of the truncated law of N with the law of -M.
double left_tail_deviation(const TandemParams& params);

struct TandemReport {
  TandemParams params;
  double xi = 0.0;
  StepDistribution step;
  left::LeftSolution solution;
  PowerSeries simplified_mgf;  // M(s) with F+(s) = V(1/s)(U(s) - U(r)) substituted
  double route_gap = 0.0;      // max coefficient gap to solution.mgf
  double tail_deviation = 0.0;
};

/// build_step, left::solve, and the simplified tandem M(s); throws
/// ValidationError when the two M(s) expansions differ by more than 1e-8.
TandemReport analyze(const TandemParams& params, int K, const left::SolveOptions& options = {});

}  // namespace kpwalk::tandem
