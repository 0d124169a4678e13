#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kpwalk/dist.hpp"
#include "kpwalk/tandem.hpp"

/// Oracles that never touch the ladder machinery: the Lindley recursion
/// iterated to its fixed point, Monte Carlo sampling of the walk maximum, and
/// an event-driven simulation of the tandem queue.
namespace kpwalk::sim {

/// Law of W_k on 0..x_max for W_{k+1} = max(0, W_k + X_{k+1}), W_0 = 0.
struct LindleyState {
  std::vector<double> dist;
  long iteration = 0;
  double tv_delta = 1.0;
  double leak = 0.0;  // accumulated mass pushed above x_max
};

LindleyState lindley_start(long x_max);
void lindley_sweep(const StepDistribution& step, LindleyState& state);
void lindley_sweep(const IntegerPMF& step, LindleyState& state);

/// Sweeps until the total-variation change drops below `tol`; throws
/// ValidationError after `max_sweeps`. tail_bound = leak + tol.
SupremumLaw lindley_fixed_point(const StepDistribution& step, long x_max, double tol,
                                long max_sweeps = 1000000, long* sweeps = nullptr);
SupremumLaw lindley_fixed_point(const IntegerPMF& step, long x_max, double tol,
                                long max_sweeps = 1000000, long* sweeps = nullptr);

/// x_max with Lundberg bound P(sup > x_max) below tol / 10.
long lindley_window(const StepDistribution& step, double tol);

using Histogram = std::map<long, std::uint64_t>;

struct SimReport {
  Histogram histogram;  // walk maxima (mc_sup) or queue-2 occupancy Z (tandem)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  Histogram busy_period;    // N per cycle
  Histogram dissociations;  // M per cycle
  Histogram occupancy;      // Z at each rescue
  // occupancy_batches[b][z]: per-batch Z counts, last bin collects z >= cap
  std::vector<std::vector<std::uint64_t>> occupancy_batches;
  long steps = 0;           // mc_sup: final number of steps per path
  double nm_correlation = 0.0;
  bool unstable = false;    // tandem: b >= 1

  bool operator==(const SimReport&) const = default;
};

/// Max over n_steps of each of n_paths walks; n_steps doubles until under
/// 0.1% of paths raise their maximum in the second half of the horizon.
SimReport mc_sup(const StepDistribution& step, std::uint64_t n_paths, long n_steps,
                 std::uint64_t seed, unsigned threads = 0);
SimReport mc_sup(const IntegerPMF& step, std::uint64_t n_paths, long n_steps,
                 std::uint64_t seed, unsigned threads = 0);

inline constexpr int kTandemReplicas = 20;
inline constexpr int kBatchesPerReplica = 10;
inline constexpr long kWarmupCycles = 1000;
inline constexpr long kOccupancyCap = 256;

/// Event-driven tandem queue: exponential clocks for arrivals (mean alpha),
/// server 1 (mean beta) and server 2 (mean gamma, running only while server
/// 1 is idle, last come first served). A cycle starts when an arrival finds
/// server 1 idle; at the next such arrival it records N, M (server-2 clock
/// ticks since server 1 went idle, including ticks with queue 2 empty) and
/// Z = queue-2 length. Runs kTandemReplicas independent replicas, each with
/// kWarmupCycles discarded cycles.
SimReport simulate_tandem(const tandem::TandemParams& params, std::uint64_t n_cycles,
                          std::uint64_t seed, unsigned threads = 0);

/// Empirical pmf of a histogram over 0..max(key).
std::vector<double> frequencies(const Histogram& h, std::uint64_t n);

}  // namespace kpwalk::sim
