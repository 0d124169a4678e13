#include <cmath>
#include <string>

#include "doctest.h"
#include "kpwalk/errors.hpp"
#include "kpwalk/tandem.hpp"
#include "oracles.hpp"

using namespace kpwalk;
using doctest::Approx;

TEST_CASE("busy-period counts: hand values and Catalan products") {
  CHECK(tandem::busy_period_pmf(0.5, 5).at(1) == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(tandem::busy_period_pmf(0.3, 5).at(2) == Approx(0.3 / std::pow(1.3, 3)).epsilon(1e-14));
  CHECK(tandem::busy_period_pmf(0.3, 5).at(2) == Approx(0.13655).epsilon(1e-4));
  for (double a : {0.1, 0.5, 0.9}) {
    const auto pmf = tandem::busy_period_pmf(a, 30);
    for (int k = 1; k <= 30; ++k) {
      const double expected = oracles::catalan(k - 1) * std::pow(a, k - 1) / std::pow(1.0 + a, 2 * k - 1);
      CHECK(pmf.at(k) == Approx(expected).epsilon(1e-12));
    }
    CHECK(pmf.total_mass() == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("busy-period counts match the Taylor coefficients of U") {
  const double a = 0.4;
  const auto U = tandem::U_series(a, 40);
  const auto pmf = tandem::busy_period_pmf(a, 40);
  CHECK(U[0] == Approx(0.0).epsilon(1e-15));
  for (int k = 1; k <= 40; ++k) CHECK(U[k] == Approx(pmf.at(k)).epsilon(1e-11));
}

TEST_CASE("cutoff certifies the tail") {
  for (double a : {0.2, 0.6}) {
    const long K = tandem::busy_period_cutoff(a, 1e-12);
    CHECK(tandem::busy_period_pmf(a, K).right_tail_mass < 1e-12);
  }
}

TEST_CASE("generating functions") {
  CHECK(tandem::U_eval(0.3, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(tandem::U_eval(0.3, 0.0) == Approx(0.0).epsilon(1e-15));
  CHECK(tandem::V_eval(0.6, 0.0) == Approx(0.4));
  CHECK(tandem::V_eval(0.6, 1.0) == Approx(1.0));
  CHECK(tandem::U_eval(0.3, 0.5) == Approx(tandem::U_series(0.3, 200).eval(0.5)).epsilon(1e-13));
  CHECK_THROWS_AS(tandem::U_eval(0.3, 3.0), DomainError);
  CHECK_THROWS_AS(tandem::V_eval(0.5, 2.5), DomainError);
}

TEST_CASE("step law of N - M: pgf factorizes and the left tail is geometric") {
  const auto params = tandem::TandemParams::make(1.0, 0.3, 0.5);
  CHECK(params.a == Approx(0.3));
  CHECK(params.r == Approx(2.0 / 3.0));
  CHECK(params.b == Approx(5.0 / 7.0));
  const auto step = tandem::build_step(params);
  CHECK(step.side() == TailSide::Left);
  CHECK(step.xi() == Approx(tandem::U_eval(params.a, params.r)).epsilon(1e-14));
  for (double s : {0.7, 0.8, 0.95}) {
    CHECK(step.pgf(s) == Approx(tandem::U_eval(params.a, s) * tandem::V_eval(params.r, 1.0 / s)).epsilon(1e-12));
  }
  CHECK(tandem::left_tail_deviation(params) < 1e-12);
  // P(X = x) = sum_k P(N = k) P(M = k - x) by brute force.
  const auto N = tandem::busy_period_pmf(params.a, 400);
  for (long x = -3; x <= 5; ++x) {
    double sum = 0.0;
    for (long k = std::max(1L, x); k <= 400; ++k) sum += N.at(k) * (1.0 - params.r) * std::pow(params.r, k - x);
    CHECK(step.pmf(x) == Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("stability: b < 1 exactly when the step mean is negative") {
  for (double beta : {0.1, 0.4, 0.7}) {
    for (double gamma : {0.2, 0.5, 0.8, 1.0}) {
      const auto params = tandem::TandemParams::make(1.0, beta, gamma);
      const double mean = 1.0 / (1.0 - params.a) - params.r / (1.0 - params.r);
      CHECK((params.b < 1.0) == (mean < 0.0));
      if (params.b < 1.0) {
        CHECK(tandem::build_step(params).mean() == Approx(mean).epsilon(1e-9));
      } else {
        CHECK_THROWS_AS(tandem::build_step(params), DriftError);
      }
    }
  }
}

TEST_CASE("unstable parameters name the load") {
  const auto params = tandem::TandemParams::make(1.0, 0.5, 0.6);
  try {
    tandem::build_step(params);
    FAIL("expected DriftError");
  } catch (const DriftError& e) {
    CHECK(std::string(e.what()).find("load") != std::string::npos);
  }
  CHECK_THROWS_AS(tandem::TandemParams::make(1.0, 1.2, 0.1), InputError);
  CHECK_THROWS_AS(tandem::TandemParams::make(-1.0, 0.2, 0.1), InputError);
}

TEST_CASE("analyze: both M(s) expansions agree") {
  const auto report = tandem::analyze(tandem::TandemParams::make(1.0, 0.3, 0.5), 48);
  CHECK(report.route_gap < 1e-12);
  CHECK(report.simplified_mgf[0] == Approx(1.0 - report.solution.p).epsilon(1e-12));
  double total = report.solution.sup.tail_bound;
  for (double m : report.solution.sup.pmf) total += m;
  CHECK(total == Approx(1.0).epsilon(1e-10));
}
