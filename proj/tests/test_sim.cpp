#include <cmath>

#include "doctest.h"
#include "kpwalk/errors.hpp"
#include "kpwalk/kp_right.hpp"
#include "kpwalk/sim.hpp"
#include "kpwalk/tandem.hpp"

using namespace kpwalk;
using doctest::Approx;

TEST_CASE("a walk that only steps down has sup 0") {
  const auto step = IntegerPMF::point(-1);
  const auto law = sim::lindley_fixed_point(step, 10, 1e-14);
  CHECK(law.pmf[0] == Approx(1.0));
  const auto mc = sim::mc_sup(step, 1000, 16, 1, 2);
  CHECK(mc.histogram.size() == 1);
  CHECK(mc.histogram.at(0) == 1000);
}

TEST_CASE("each Lindley sweep conserves mass") {
  const auto step = step_from_right_tail(0.4, 0.5, {{-1, 0.6}});
  auto state = sim::lindley_start(30);
  for (int i = 0; i < 50; ++i) {
    sim::lindley_sweep(step, state);
    double total = state.leak;
    for (double m : state.dist) total += m;
    CHECK(total == Approx(1.0).epsilon(1e-14));
  }
  CHECK(state.iteration == 50);
}

TEST_CASE("Lindley fixed point matches the closed form") {
  const auto step = step_from_right_tail(0.4, 0.5, {{-1, 0.6}});
  const auto law = sim::lindley_fixed_point(step, 200, 1e-13);
  const auto exact = right::sup_law(right::solve(step), 200);
  CHECK(survival_sup_norm(law, exact, 50) < 1e-10);
}

TEST_CASE("Monte Carlo sup is deterministic and thread independent") {
  const auto step = step_from_right_tail(0.4, 0.5, {{-1, 0.6}});
  const auto one = sim::mc_sup(step, 20000, 64, 99, 1);
  const auto many = sim::mc_sup(step, 20000, 64, 99, 4);
  CHECK(one == many);
  CHECK(one == sim::mc_sup(step, 20000, 64, 99, 1));
  CHECK_FALSE(one == sim::mc_sup(step, 20000, 64, 100, 1));
  const double p_hat = 1.0 - static_cast<double>(one.histogram.at(0)) / 20000.0;
  CHECK(std::abs(p_hat - 2.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / 20000.0));
}

TEST_CASE("tandem simulation: geometric M, Catalan N, reproducible") {
  const auto params = tandem::TandemParams::make(1.0, 0.3, 0.5);
  const std::uint64_t n = 200000;
  const auto a = sim::simulate_tandem(params, n, 5, 1);
  const auto b = sim::simulate_tandem(params, n, 5, 3);
  CHECK(a == b);
  CHECK(a.n_samples == n);
  const auto M = sim::frequencies(a.dissociations, n);
  for (long m = 0; m < 4; ++m) {
    const double expected = (1.0 - params.r) * std::pow(params.r, m);
    CHECK(std::abs(M[m] - expected) < 4.0 * std::sqrt(expected * (1.0 - expected) / n));
  }
  const auto N = sim::frequencies(a.busy_period, n);
  const double n1 = 1.0 / (1.0 + params.a);
  CHECK(std::abs(N[1] - n1) < 4.0 * std::sqrt(n1 * (1.0 - n1) / n));
  CHECK(std::abs(a.nm_correlation) < 4.0 / std::sqrt(static_cast<double>(n)));
  // Z is a queue length: nonnegative by construction, so no negative keys.
  CHECK(a.occupancy.begin()->first >= 0);
  CHECK(a.occupancy_batches.size() == static_cast<std::size_t>(sim::kTandemReplicas * sim::kBatchesPerReplica));
}

TEST_CASE("unstable tandem simulation is flagged") {
  const auto r = sim::simulate_tandem(tandem::TandemParams::make(1.0, 0.5, 0.6), 2000, 1, 1);
  CHECK(r.unstable);
}
