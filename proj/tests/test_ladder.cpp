#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpwalk/dist.hpp"
#include "kpwalk/errors.hpp"
#include "kpwalk/ladder.hpp"
#include "kpwalk/rng.hpp"

using namespace kpwalk;
using doctest::Approx;

namespace {
IntegerPMF pm_one_walk() { return IntegerPMF::from_atoms({{-1, 0.6}, {1, 0.4}}); }
StepDistribution gr1() { return step_from_right_tail(0.4, 0.5, {{-1, 0.6}}); }
}  // namespace

TEST_CASE("decompose a hand-made path") {
  const std::vector<long> steps{1, -1, 1, 2, -3, 0, 4};
  const auto path = ladder::Path::from_steps(steps);
  CHECK(path.partials == std::vector<long>{0, 1, 0, 1, 3, 0, 0, 4});
  const auto d = ladder::decompose(path);
  CHECK(d.strict_indices == std::vector<long>{1, 4, 7});
  CHECK(d.strict_heights == std::vector<long>{1, 3, 4});
  CHECK(d.weak_indices == std::vector<long>{1, 3, 4, 7});
  CHECK(d.weak_heights == std::vector<long>{1, 1, 3, 4});
}

TEST_CASE("a tie at zero is a weak but not a strict ladder point") {
  const std::vector<long> steps{-2, 2, 1};
  const auto d = ladder::decompose(ladder::Path::from_steps(steps));
  CHECK(d.weak_heights == std::vector<long>{0, 1});
  CHECK(d.strict_indices == std::vector<long>{3});
  const std::vector<long> down{-1, -1, -1};
  CHECK_FALSE(ladder::decompose(ladder::Path::from_steps(down)).has_first_weak());
}

TEST_CASE("plus-minus-one walk: gambler's ruin values") {
  // Up with 0.4: P(ever above 0) = 0.4/0.6; zeta = 0.6 * P(climb from -1 to 0).
  const auto dp = ladder::ladder_dp(pm_one_walk());
  CHECK(dp.p == Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(dp.zeta == Approx(0.4).epsilon(1e-9));
  CHECK(dp.L_mass[1] == Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(dp.p <= 2.0 / 3.0 + 1e-15);
  CHECK(2.0 / 3.0 <= dp.p + dp.p_bound + 1e-15);

  const auto z = ladder::zeta_series(pm_one_walk(), 1L << 16);
  CHECK(z.value == Approx(0.4).epsilon(1e-12));
  CHECK(z.bound < 1e-9);
  CHECK(z.return_probabilities[0] == 0.0);
  CHECK(z.return_probabilities[1] == Approx(0.48));
  CHECK(z.return_probabilities[3] == Approx(6.0 * 0.0576));
  CHECK(ladder::validated_zeta(z, dp) == Approx(0.4));
}

TEST_CASE("one step of the program gives the positive atoms") {
  const auto step = step_from_left_tail(0.5, 0.8, IntegerPMF::from_atoms({{1, 0.2}, {3, 0.2}, {5, 0.1}}));
  ladder::LadderOptions opts;
  opts.horizon = 1;
  opts.tolerance = 1.0;
  const auto dp = ladder::ladder_dp(step, opts);
  CHECK(dp.L_mass[1] == Approx(0.2).epsilon(1e-15));
  CHECK(dp.L_mass[2] == 0.0);
  CHECK(dp.L_mass[3] == Approx(0.2).epsilon(1e-15));
  CHECK(dp.L_mass[5] == Approx(0.1).epsilon(1e-15));
  CHECK(dp.zeta == Approx(step.pmf(0)).epsilon(1e-15));
}

TEST_CASE("estimates grow with the horizon and the certificate covers the truth") {
  const auto step = gr1();
  double prev_p = 0.0;
  double prev_zeta = 0.0;
  for (long h : {25L, 100L, 400L, 1600L}) {
    ladder::LadderOptions opts;
    opts.horizon = h;
    opts.tolerance = 1.0;
    const auto dp = ladder::ladder_dp(step, opts);
    CHECK(dp.p >= prev_p);
    CHECK(dp.zeta >= prev_zeta);
    CHECK(dp.p <= 2.0 / 3.0 + 1e-14);
    CHECK(2.0 / 3.0 <= dp.p + dp.p_bound + 1e-14);
    prev_p = dp.p;
    prev_zeta = dp.zeta;
  }
}

TEST_CASE("horizon 400 is not enough for 1e-10 on the geometric right-tail example") {
  ladder::LadderOptions opts;
  opts.horizon = 400;
  CHECK_THROWS_AS(ladder::ladder_dp(gr1(), opts), ValidationError);
  const auto automatic = ladder::ladder_dp(gr1());
  CHECK(automatic.p == Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(automatic.p_bound <= 1e-10);
}

TEST_CASE("validated_zeta rejects a disagreeing program") {
  auto dp = ladder::ladder_dp(pm_one_walk());
  const auto z = ladder::zeta_series(pm_one_walk(), 1L << 16);
  dp.zeta += 1e-3;
  CHECK_THROWS_AS(ladder::validated_zeta(z, dp), ValidationError);
  CHECK_THROWS_AS(ladder::zeta_series(pm_one_walk(), 0), InputError);
}

TEST_CASE("drift must be negative") {
  CHECK_THROWS_AS(ladder::ladder_dp(IntegerPMF::from_atoms({{-1, 0.5}, {1, 0.5}})), DriftError);
}

TEST_CASE("Monte Carlo frequency of a zero first weak height") {
  const long n_paths = 40000;
  Stream rng(2024, 0);
  long zero = 0;
  long none = 0;
  std::vector<long> steps(600);
  for (long i = 0; i < n_paths; ++i) {
    for (auto& x : steps) x = rng.uniform() < 0.4 ? 1 : -1;
    const auto d = ladder::decompose(ladder::Path::from_steps(steps));
    if (!d.has_first_weak()) {
      ++none;
    } else if (d.weak_heights.front() == 0) {
      ++zero;
    }
  }
  const double freq = static_cast<double>(zero) / n_paths;
  const double sigma = std::sqrt(0.4 * 0.6 / n_paths);
  CHECK(std::abs(freq - 0.4) < 4.0 * sigma);
  // Up first (0.4) or down and back (0.6 * 2/3); the rest never reach 0.
  CHECK(std::abs(static_cast<double>(none) / n_paths - 0.2) < 4.0 * std::sqrt(0.2 * 0.8 / n_paths));
}
