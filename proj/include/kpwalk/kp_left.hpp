#pragma once

#include <vector>

#include "kpwalk/dist.hpp"
#include "kpwalk/ladder.hpp"
#include "kpwalk/series.hpp"

/// Supremum law of a negative-drift walk whose left tail is geometric,
/// P(X <= x) = xi r^-x for x <= 0.
///
/// With zeta = P(first weak ladder height = 0), the strict ladder measure is
///
///   (1 - zeta) L{x} = P(X = x) + (1 - r) P(X > x),   x >= 1,
///
/// so (1 - zeta) p = r + (1 - r) E[X], and the generating function of the
/// supremum is M(s) = (1 - p) / (1 - L(s)) with L the (defective) ladder
/// height pgf.
namespace kpwalk::left {

/// The strict ladder-height measure; mass[x] = L{x}, mass[0] unused.
struct LadderMeasure {
  std::vector<double> mass;
  double tail_bound = 0.0;  // L mass above mass.size() - 1
  double zeta = 0.0;

  long x_max() const { return static_cast<long>(mass.size()) - 1; }
  double total() const;
};

/// x_max = 0 picks the smallest x_max whose tail bound is below 1e-12.
LadderMeasure ladder_measure(const StepDistribution& step, double zeta, long x_max = 0);

/// (1 - zeta) times the ladder-height pgf, from the closed form in F+(s) =
/// E[s^X; X > 0]. Defined for -1 < s <= 1; at s = 1 the removable
/// singularity is replaced by its limit r + (1 - r) E[X].
double ladder_pgf(const StepDistribution& step, double zeta, double s);

/// Sup law as (1 - p) * sum_n L^{n*} on 0..K, with L^{n*} = p^n H^{n*} for
/// the ladder height law H.
SupremumLaw psi_sup_law(const LadderMeasure& L, double p, long K, long* terms = nullptr);

/// Coefficients of M(s) from the Khinchine-Pollaczek quotient, expanded by
/// power-series division up to s^K.
PowerSeries corollary_mgf(const StepDistribution& step, double zeta, int K);

struct SolveOptions {
  ladder::LadderOptions dp{};
  long zeta_terms = 1L << 16;
  double zeta_tol = 1e-6;
  double p_tol = 1e-6;
  double route_tol = 1e-8;
};

struct LeftSolution {
  double zeta = 0.0;
  double p = 0.0;
  LadderMeasure L;
  SupremumLaw sup;
  PowerSeries mgf{std::vector<double>{1.0}};
  ladder::LadderData dp;
  ladder::ZetaEstimate zeta_estimate;
  double route_gap = 0.0;  // max coefficient gap between the two sup-law routes
  long psi_terms = 0;
};

/// zeta from the return-probability series (checked against the ladder DP),
/// p from (1 - zeta) p = r + (1 - r) E[X], then the sup law by two routes
/// that must agree within `route_tol`.
LeftSolution solve(const StepDistribution& step, int K, const SolveOptions& options = {});

}  // namespace kpwalk::left
