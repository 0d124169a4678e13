#include <cmath>

#include "doctest.h"
#include "kpwalk/errors.hpp"
#include "kpwalk/series.hpp"

using namespace kpwalk;
using doctest::Approx;

TEST_CASE("reciprocal of 1 - s is the geometric series") {
  const PowerSeries one_minus_s({1.0, -1.0, 0.0, 0.0, 0.0, 0.0});
  const auto inv = series_reciprocal(one_minus_s);
  for (int k = 0; k <= 5; ++k) CHECK(inv[k] == Approx(1.0));
  CHECK(series_mul(one_minus_s, inv) == PowerSeries::constant(1.0, 5));
}

TEST_CASE("product matches brute-force Cauchy sums") {
  const PowerSeries a({1.0, 2.0, 3.0, 4.0});
  const PowerSeries b({0.5, -1.0, 0.25, 2.0});
  const auto c = series_mul(a, b);
  for (int k = 0; k <= 3; ++k) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) sum += a[i] * b[k - i];
    CHECK(c[k] == Approx(sum));
  }
}

TEST_CASE("division inverts multiplication") {
  const auto g = PowerSeries::geometric(0.3, 12);
  const PowerSeries p({2.0, 1.0, -0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  const auto q = series_div(series_mul(p, g), g);
  for (int k = 0; k <= 12; ++k) CHECK(q[k] == Approx(p[k]).epsilon(1e-13));
  CHECK_THROWS_AS(series_reciprocal(PowerSeries::monomial(1, 3)), InputError);
}

TEST_CASE("square root squares back") {
  const PowerSeries a({4.0, 1.0, -3.0, 0.5, 0.0, 2.0});
  const auto root = series_sqrt(a);
  const auto sq = series_mul(root, root);
  for (int k = 0; k <= 5; ++k) CHECK(sq[k] == Approx(a[k]).epsilon(1e-13));
  // sqrt(1 - 4s) has coefficients -2 C(k-1) for k >= 1.
  const auto c = series_sqrt(PowerSeries({1.0, -4.0, 0, 0, 0, 0, 0}));
  const double catalan[] = {1, 1, 2, 5, 14, 42};
  for (int k = 1; k <= 6; ++k) CHECK(c[k] == Approx(-2.0 * catalan[k - 1]));
  CHECK_THROWS_AS(series_sqrt(PowerSeries({0.0, 1.0})), InputError);
}

TEST_CASE("evaluation and coefficient sum") {
  const auto g = PowerSeries::geometric(0.5, 60);
  CHECK(g.eval(1.0) == Approx(2.0).epsilon(1e-15));
  CHECK(g.coefficient_sum() == Approx(2.0).epsilon(1e-15));
  CHECK(g.truncated(3).order() == 3);
  CHECK((g - g).coefficient_sum() == 0.0);
  CHECK((2.0 * g)[4] == Approx(0.125));
}
