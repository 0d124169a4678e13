#include <cmath>

#include "doctest.h"
#include "kpwalk/errors.hpp"
#include "kpwalk/kp_left.hpp"
#include "kpwalk/sim.hpp"
#include "kpwalk/tandem.hpp"
#include "oracles.hpp"

using namespace kpwalk;
using doctest::Approx;

namespace {
StepDistribution skip_free() { return step_from_left_tail(0.6, 0.5, IntegerPMF::from_atoms({{1, 0.4}})); }
StepDistribution three_atoms() {
  return step_from_left_tail(0.5, 0.8, IntegerPMF::from_atoms({{1, 0.2}, {3, 0.2}, {5, 0.1}}));
}
StepDistribution two_atoms() {
  return step_from_left_tail(0.6, 0.7, IntegerPMF::from_atoms({{1, 0.25}, {2, 0.15}}));
}
}  // namespace

TEST_CASE("ladder measure total matches r + (1 - r) E[X]") {
  for (const auto& step : {skip_free(), three_atoms(), two_atoms()}) {
    const auto sol = left::solve(step, 64);
    const double target = step.r() + (1.0 - step.r()) * step.mean();
    CHECK((1.0 - sol.zeta) * sol.L.total() == Approx(target).epsilon(1e-12));
    CHECK((1.0 - sol.zeta) * sol.p == Approx(target).epsilon(1e-12));
    CHECK(left::ladder_pgf(step, sol.zeta, 1.0) == Approx(target).epsilon(1e-12));
    CHECK(sol.mgf[0] == Approx(1.0 - sol.p).epsilon(1e-12));
    CHECK(sol.sup.pmf[0] == Approx(1.0 - sol.p).epsilon(1e-12));
  }
}

TEST_CASE("upward skip-free walk: p is the hitting probability of +1") {
  // h = P(X = 1) + sum_{x <= 0} P(X = x) h^(1 - x) = 0.4 + 0.3 h / (1 - h / 2),
  // whose root in (0, 1) is 4/5.
  const auto step = skip_free();
  const double h = 0.8;
  double rhs = step.pmf(1);
  for (long x = 0; x >= -2000; --x) rhs += step.pmf(x) * std::pow(h, 1 - x);
  CHECK(rhs == Approx(h).epsilon(1e-14));
  const auto sol = left::solve(step, 32);
  CHECK(sol.p == Approx(h).epsilon(1e-10));
  CHECK(sol.L.mass[1] == Approx(h).epsilon(1e-10));
  CHECK(sol.zeta == Approx(1.0 - 0.4 / h).epsilon(1e-10));
  for (long x = 2; x <= sol.L.x_max(); ++x) CHECK(sol.L.mass[x] == 0.0);
  // The sup of a skip-free walk is geometric with ratio h.
  for (int k = 0; k <= 32; ++k) CHECK(sol.sup.pmf[k] == Approx((1.0 - h) * std::pow(h, k)).epsilon(1e-9));
}

TEST_CASE("ladder pgf against brute-force sums") {
  const auto step = three_atoms();
  const auto sol = left::solve(step, 64);
  CHECK(left::ladder_pgf(step, sol.zeta, 0.0) == Approx(0.0));
  for (double s : {-0.5, 0.3, 0.5, 0.9}) {
    double sum = 0.0;
    for (long x = 1; x <= sol.L.x_max(); ++x) sum += sol.L.mass[x] * std::pow(s, x);
    CHECK(left::ladder_pgf(step, sol.zeta, s) == Approx((1.0 - sol.zeta) * sum).epsilon(1e-12));
  }
  const double at_one = left::ladder_pgf(step, sol.zeta, 1.0);
  CHECK(left::ladder_pgf(step, sol.zeta, 1.0 - 1e-7) == Approx(at_one).epsilon(1e-6));
  CHECK_THROWS_AS(left::ladder_pgf(step, sol.zeta, 1.5), DomainError);
}

TEST_CASE("enumerated ladder quantities support the (1 - r) coefficient") {
  const auto step = two_atoms();
  const auto e = oracles::enumerate_ladders(step, 40);
  const double r = step.r();
  for (long x = 1; x <= 4; ++x) {
    const double formula = step.pmf(x) + (1.0 - r) * step.survival(x);
    // (1 - zeta) L{x} from truncated sums, with both remainders propagated.
    const double L = e.L.count(x) ? e.L.at(x) : 0.0;
    const double lhs = (1.0 - e.zeta) * L;
    const double slack = e.strict_remainder + L * e.weak_remainder + 1e-12;
    CHECK(std::abs(lhs - formula) <= slack);
    // The first weak ladder height has the same law on x >= 1.
    const double W = e.W.count(x) ? e.W.at(x) : 0.0;
    CHECK(std::abs(W - formula) <= e.weak_remainder + 1e-12);
  }
}

TEST_CASE("both sup-law routes and the Lindley fixed point agree") {
  const auto step = two_atoms();
  const auto sol = left::solve(step, 60);
  CHECK(sol.route_gap < 1e-10);
  const auto lindley = sim::lindley_fixed_point(step, sim::lindley_window(step, 1e-12), 1e-13);
  CHECK(tv_distance(sol.sup, lindley) < 1e-9);
}

TEST_CASE("tandem example: (1 - zeta) p = 10/21") {
  const auto params = tandem::TandemParams::make(1.0, 0.3, 0.5);
  const auto step = tandem::build_step(params);
  // E[X] = 1/(1 - a) - r/(1 - r) with a = 0.3, r = 2/3.
  CHECK(step.mean() == Approx(1.0 / 0.7 - 2.0).epsilon(1e-9));
  const auto sol = left::solve(step, 32);
  CHECK((1.0 - sol.zeta) * sol.p == Approx(10.0 / 21.0).epsilon(1e-9));
}

TEST_CASE("left solve rejects right-tail laws and positive drift") {
  CHECK_THROWS_AS(left::solve(step_from_right_tail(0.4, 0.5, {{-1, 0.6}}), 8), InputError);
  CHECK_THROWS_AS(left::solve(step_from_left_tail(0.2, 0.5, IntegerPMF::from_atoms({{3, 0.8}})), 8), DriftError);
}
