#pragma once

#include <span>
#include <vector>

#include "kpwalk/dist.hpp"

/// Definition-level oracles for the ladder structure of an integer random
/// walk. Nothing here uses the closed-form supremum laws; the only analytic
/// input is the Lundberg supermartingale bound used to certify truncation.
namespace kpwalk::ladder {

/// A realized walk: S_0 = 0 and S_k = S_{k-1} + X_k.
struct Path {
  std::vector<long> steps;
  std::vector<long> partials;

  static Path from_steps(std::span<const long> steps);
};

/// Strict ladder indices n satisfy S_n > max(S_0..S_{n-1}); weak ladder
/// indices satisfy S_n >= max(S_0..S_{n-1}). Indices are 1-based step counts.
struct LadderDecomposition {
  std::vector<long> strict_indices;
  std::vector<long> strict_heights;
  std::vector<long> weak_indices;
  std::vector<long> weak_heights;

  bool has_first_weak() const { return !weak_indices.empty(); }
};

LadderDecomposition decompose(const Path& path);

struct LadderOptions {
  long horizon = 0;       // 0: step until the in-flight bound is below `tolerance`
  long floor = 0;         // 0: choose from the Lundberg bound and r
  long height_cap = 512;
  double tolerance = 1e-10;
  long max_horizon = 1L << 20;
};

/// Output of the forward dynamic program over walks that have not yet
/// produced a ladder event.
struct LadderData {
  double p = 0.0;                 // sum of L_mass plus the exact overshoot above height_cap
  double zeta = 0.0;              // P(first weak ladder height = 0), lower estimate
  std::vector<double> L_mass;     // L_mass[h] = L{h}; index 0 unused
  double L_tail_bound = 0.0;      // L mass not in L_mass: overshoot plus p_bound
  double p_bound = 0.0;           // true p lies in [p, p + p_bound]
  double zeta_bound = 0.0;        // true zeta lies in [zeta, zeta + zeta_bound]
  long horizon = 0;
  long floor = 0;
};

/// Accumulates, step by step, the mass of walks with all S_k <= 0 jumping to
/// a height h > 0 (the measure L) and the mass of walks with S_1..S_{n-1} < 0
/// hitting exactly 0 (zeta).
LadderData ladder_dp(const StepDistribution& step, const LadderOptions& options = {});
LadderData ladder_dp(const IntegerPMF& step, const LadderOptions& options = {});

struct ZetaEstimate {
  double value = 0.0;
  double bound = 0.0;   // certified |value - zeta| bound
  long terms = 0;
  std::vector<double> return_probabilities;  // P(S_n = 0), n = 1..terms
};

/// zeta from log(1 / (1 - zeta)) = sum_n P(S_n = 0) / n, with P(S_n = 0)
/// from windowed iterated convolution. Stops early once the certified
/// remainder is negligible; throws ValidationError when the bound after
/// `n_max` terms exceeds 1e-7.
ZetaEstimate zeta_series(const StepDistribution& step, long n_max);
ZetaEstimate zeta_series(const IntegerPMF& step, long n_max);

/// Returns the series value after checking it against the dynamic program;
/// throws ValidationError on disagreement beyond `tol`.
double validated_zeta(const ZetaEstimate& series, const LadderData& dp, double tol = 1e-6);

}  // namespace kpwalk::ladder
