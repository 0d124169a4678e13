#include "kpwalk/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "kernel.hpp"
#include "kpwalk/errors.hpp"
#include "kpwalk/rng.hpp"

namespace kpwalk::sim {

using detail::Kernel;

// ---------------------------------------------------------------------------
// Lindley recursion

LindleyState lindley_start(long x_max) {
  if (x_max < 1) throw InputError("lindley: x_max must be >= 1");
  LindleyState s;
  s.dist.assign(static_cast<std::size_t>(x_max) + 1, 0.0);
  s.dist[0] = 1.0;
  return s;
}

namespace {

void sweep(const Kernel& k, LindleyState& state) {
  const auto& w = state.dist;
  const std::size_t size = w.size();
  const long x_max = static_cast<long>(size) - 1;
  std::vector<double> next(size, 0.0);
  double leak = 0.0;

  for (std::size_t y = 0; y < size; ++y) {
    const double m = w[y];
    if (m == 0.0) continue;
    for (std::size_t a = 0; a < k.atom_x.size(); ++a) {
      const long u = static_cast<long>(y) + k.atom_x[a];
      const double q = m * k.atom_p[a];
      if (u <= 0) next[0] += q;
      else if (u > x_max) leak += q;
      else next[static_cast<std::size_t>(u)] += q;
    }
  }
  if (k.tail) {
    const double xi = k.tail->xi;
    const double r = k.tail->r;
    const double c = xi * (1.0 - r);
    if (k.tail->side == TailSide::Right) {
      double g = 0.0;  // sum_{y <= u} w(y) r^(u-y)
      for (std::size_t u = 0; u < size; ++u) {
        g = r * g + w[u];
        next[u] += c * g;
      }
      leak += xi * r * g;
    } else {
      double h = 0.0;  // sum_{y >= u} w(y) r^(y-u)
      for (std::size_t u = size; u-- > 1;) {
        h = r * h + w[u];
        next[u] += c * h;
      }
      h = r * h + w[0];
      next[0] += xi * h;
    }
  }
  const double mass = std::accumulate(w.begin(), w.end(), 0.0);
  leak += mass * k.unlocated;

  double tv = 0.0;
  for (std::size_t i = 0; i < size; ++i) tv += std::abs(next[i] - w[i]);
  state.tv_delta = 0.5 * tv;
  state.leak += leak;
  state.dist.swap(next);
  ++state.iteration;
}

SupremumLaw run_fixed_point(const Kernel& k, long x_max, double tol, long max_sweeps,
                            long* sweeps) {
  if (!(k.mean() < 0.0)) throw DriftError("lindley: walk has nonnegative drift");
  if (!(tol > 0.0)) throw InputError("lindley: tolerance must be positive");
  LindleyState state = lindley_start(x_max);
  while (state.iteration < max_sweeps) {
    sweep(k, state);
    if (state.tv_delta < tol) break;
  }
  if (sweeps) *sweeps = state.iteration;
  if (state.tv_delta >= tol) {
    std::ostringstream msg;
    msg << "lindley: no convergence after " << state.iteration << " sweeps (change "
        << state.tv_delta << ")";
    throw ValidationError(msg.str());
  }
  return SupremumLaw{state.dist, state.leak + tol};
}

}  // namespace

void lindley_sweep(const StepDistribution& step, LindleyState& state) {
  sweep(Kernel::from(step), state);
}

void lindley_sweep(const IntegerPMF& step, LindleyState& state) {
  sweep(Kernel::from(step), state);
}

SupremumLaw lindley_fixed_point(const StepDistribution& step, long x_max, double tol,
                                long max_sweeps, long* sweeps) {
  return run_fixed_point(Kernel::from(step), x_max, tol, max_sweeps, sweeps);
}

SupremumLaw lindley_fixed_point(const IntegerPMF& step, long x_max, double tol,
                                long max_sweeps, long* sweeps) {
  return run_fixed_point(Kernel::from(step), x_max, tol, max_sweeps, sweeps);
}

long lindley_window(const StepDistribution& step, double tol) {
  const double s = lundberg_point(step);
  return std::max(16L, static_cast<long>(std::ceil(std::log(10.0 / tol) / std::log(s))));
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

// Runs body(i) for i in [0, n) on `threads` workers, contiguous chunks.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([=, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

class StepSampler {
 public:
  explicit StepSampler(const Kernel& k) : k_(k) {
    double acc = 0.0;
    for (double p : k.atom_p) cumulative_.push_back(acc += p);
    tail_mass_ = k.tail ? k.tail->xi : 0.0;
    log_r_ = k.tail ? std::log(k.tail->r) : 0.0;
  }

  long operator()(Stream& rng) const {
    const double u = rng.uniform();
    if (u < tail_mass_) {
      const long g = static_cast<long>(std::floor(std::log(rng.uniform()) / log_r_));
      return k_.tail->side == TailSide::Right ? g : -g;
    }
    // Finite part by inverse CDF, normalised to the located atom mass.
    const double target = (u - tail_mass_) / (1.0 - tail_mass_) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    return k_.atom_x[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  const Kernel& k_;
  std::vector<double> cumulative_;
  double tail_mass_ = 0.0;
  double log_r_ = 0.0;
};

struct WalkState {
  long position = 0;
  long maximum = 0;
};

SimReport run_mc_sup(const Kernel& k, std::uint64_t n_paths, long n_steps, std::uint64_t seed,
                     unsigned threads) {
  if (!(k.mean() < 0.0)) throw DriftError("mc_sup: walk has nonnegative drift");
  if (n_paths == 0 || n_steps < 1) throw InputError("mc_sup: need at least one path and one step");
  const StepSampler sample(k);
  std::vector<WalkState> walks(n_paths);
  std::vector<Stream> streams;
  streams.reserve(n_paths);
  for (std::uint64_t i = 0; i < n_paths; ++i) streams.emplace_back(seed, i);

  auto advance = [&](long steps, std::vector<char>* raised) {
    parallel_for(n_paths, threads, [&](std::size_t i) {
      WalkState& w = walks[i];
      const long before = w.maximum;
      for (long s = 0; s < steps; ++s) {
        w.position += sample(streams[i]);
        w.maximum = std::max(w.maximum, w.position);
      }
      if (raised) (*raised)[i] = w.maximum > before;
    });
  };

  long done = n_steps;
  advance(n_steps, nullptr);
  std::vector<char> raised(n_paths, 0);
  constexpr long kMaxSteps = 1L << 24;
  while (true) {
    advance(done, &raised);
    done *= 2;
    const auto count = static_cast<std::uint64_t>(std::count(raised.begin(), raised.end(), 1));
    if (static_cast<double>(count) < 1e-3 * static_cast<double>(n_paths) || done >= kMaxSteps) break;
  }

  SimReport report;
  report.seed = seed;
  report.n_samples = n_paths;
  report.steps = done;
  for (const auto& w : walks) ++report.histogram[w.maximum];
  return report;
}

}  // namespace

SimReport mc_sup(const StepDistribution& step, std::uint64_t n_paths, long n_steps,
                 std::uint64_t seed, unsigned threads) {
  return run_mc_sup(Kernel::from(step), n_paths, n_steps, seed, threads);
}

SimReport mc_sup(const IntegerPMF& step, std::uint64_t n_paths, long n_steps,
                 std::uint64_t seed, unsigned threads) {
  return run_mc_sup(Kernel::from(step), n_paths, n_steps, seed, threads);
}

// ---------------------------------------------------------------------------
// Tandem queue

namespace {

struct Cycle {
  long n;
  long m;
  long z;
};

class TandemQueue {
 public:
  TandemQueue(const tandem::TandemParams& p, Stream rng) : p_(p), rng_(rng) {
    t_arrival_ = rng_.exponential(p_.alpha);
  }

  // Advances to the next rescue (an arrival that finds server 1 idle) and
  // returns the cycle that it closes. The first call only opens a cycle.
  bool next_cycle(Cycle& out) {
    while (true) {
      const bool s1_active = queue1_ > 0;
      const bool s2_active = !s1_active && in_cycle_;
      // Ties go to the arrival.
      if ((!s1_active || t_arrival_ <= t_s1_) && (!s2_active || t_arrival_ <= t_s2_)) {
        now_ = t_arrival_;
        t_arrival_ = now_ + rng_.exponential(p_.alpha);
        if (queue1_ == 0) {
          const bool closed = in_cycle_;
          if (closed) out = Cycle{served_, dissociated_, queue2_};
          in_cycle_ = true;
          served_ = 0;
          dissociated_ = 0;
          queue1_ = 1;
          t_s1_ = now_ + rng_.exponential(p_.beta);
          if (closed) return true;
        } else {
          ++queue1_;
        }
      } else if (s1_active && (!s2_active || t_s1_ <= t_s2_)) {
        now_ = t_s1_;
        --queue1_;
        ++queue2_;
        ++served_;
        if (queue1_ > 0) {
          t_s1_ = now_ + rng_.exponential(p_.beta);
        } else {
          t_s2_ = now_ + rng_.exponential(p_.gamma);  // catastrophe begins
        }
      } else {
        now_ = t_s2_;
        ++dissociated_;
        if (queue2_ > 0) --queue2_;  // empty chain: server 2 idles, Z stays 0
        t_s2_ = now_ + rng_.exponential(p_.gamma);
      }
    }
  }

 private:
  tandem::TandemParams p_;
  Stream rng_;
  double now_ = 0.0;
  double t_arrival_ = 0.0;
  double t_s1_ = 0.0;
  double t_s2_ = 0.0;
  long queue1_ = 0;
  long queue2_ = 0;
  long served_ = 0;
  long dissociated_ = 0;
  bool in_cycle_ = false;
};

struct ReplicaResult {
  Histogram n, m, z;
  std::vector<std::vector<std::uint64_t>> batches;
  double sum_n = 0, sum_m = 0, sum_nn = 0, sum_mm = 0, sum_nm = 0;
};

}  // namespace

SimReport simulate_tandem(const tandem::TandemParams& params, std::uint64_t n_cycles,
                          std::uint64_t seed, unsigned threads) {
  if (n_cycles == 0) throw InputError("simulate_tandem: n_cycles must be positive");
  std::vector<ReplicaResult> results(kTandemReplicas);
  parallel_for(kTandemReplicas, threads, [&](std::size_t rep) {
    const std::uint64_t share = n_cycles / kTandemReplicas + (rep < n_cycles % kTandemReplicas ? 1 : 0);
    ReplicaResult& res = results[rep];
    res.batches.assign(kBatchesPerReplica, std::vector<std::uint64_t>(kOccupancyCap + 1, 0));
    TandemQueue queue(params, Stream(seed, rep));
    Cycle c{};
    for (long w = 0; w < kWarmupCycles; ++w) queue.next_cycle(c);
    for (std::uint64_t j = 0; j < share; ++j) {
      queue.next_cycle(c);
      ++res.n[c.n];
      ++res.m[c.m];
      ++res.z[c.z];
      const std::size_t batch = static_cast<std::size_t>(j * kBatchesPerReplica / share);
      ++res.batches[batch][static_cast<std::size_t>(std::min(c.z, kOccupancyCap))];
      const double n = static_cast<double>(c.n);
      const double m = static_cast<double>(c.m);
      res.sum_n += n;
      res.sum_m += m;
      res.sum_nn += n * n;
      res.sum_mm += m * m;
      res.sum_nm += n * m;
    }
  });

  SimReport report;
  report.seed = seed;
  report.n_samples = n_cycles;
  report.unstable = !(params.b < 1.0);
  double sn = 0, sm = 0, snn = 0, smm = 0, snm = 0;
  for (const auto& res : results) {
    for (const auto& [k, v] : res.n) report.busy_period[k] += v;
    for (const auto& [k, v] : res.m) report.dissociations[k] += v;
    for (const auto& [k, v] : res.z) report.occupancy[k] += v;
    for (const auto& b : res.batches) report.occupancy_batches.push_back(b);
    sn += res.sum_n;
    sm += res.sum_m;
    snn += res.sum_nn;
    smm += res.sum_mm;
    snm += res.sum_nm;
  }
  report.histogram = report.occupancy;
  const double n = static_cast<double>(n_cycles);
  const double cov = snm / n - (sn / n) * (sm / n);
  const double var_n = snn / n - (sn / n) * (sn / n);
  const double var_m = smm / n - (sm / n) * (sm / n);
  report.nm_correlation = (var_n > 0 && var_m > 0) ? cov / std::sqrt(var_n * var_m) : 0.0;
  return report;
}

std::vector<double> frequencies(const Histogram& h, std::uint64_t n) {
  if (h.empty() || n == 0) return {};
  const long top = std::max(0L, h.rbegin()->first);
  std::vector<double> f(static_cast<std::size_t>(top) + 1, 0.0);
  for (const auto& [k, v] : h) {
    if (k >= 0) f[static_cast<std::size_t>(k)] = static_cast<double>(v) / static_cast<double>(n);
  }
  return f;
}

}  // namespace kpwalk::sim
