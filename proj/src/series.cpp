#include "kpwalk/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kpwalk/errors.hpp"

namespace kpwalk {

PowerSeries::PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InputError("PowerSeries: empty coefficient list");
}

PowerSeries PowerSeries::constant(double c, int order) {
  std::vector<double> v(static_cast<std::size_t>(order) + 1, 0.0);
  v[0] = c;
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::geometric(double q, int order) {
  std::vector<double> v(static_cast<std::size_t>(order) + 1);
  double term = 1.0;
  for (auto& c : v) {
    c = term;
    term *= q;
  }
  return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::monomial(int k, int order) {
  std::vector<double> v(static_cast<std::size_t>(order) + 1, 0.0);
  if (k <= order) v[static_cast<std::size_t>(k)] = 1.0;
  return PowerSeries(std::move(v));
}

double PowerSeries::eval(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double PowerSeries::coefficient_sum() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0);
}

PowerSeries PowerSeries::truncated(int order) const {
  std::vector<double> v(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1);
  return PowerSeries(std::move(v));
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  const int k = std::min(a.order(), b.order());
  std::vector<double> v(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) v[static_cast<std::size_t>(i)] = a[i] + b[i];
  return PowerSeries(std::move(v));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  return a + (-1.0) * b;
}

PowerSeries operator*(double c, const PowerSeries& a) {
  std::vector<double> v = a.coeffs();
  for (auto& x : v) x *= c;
  return PowerSeries(std::move(v));
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
  const int k = std::min(a.order(), b.order());
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  for (int i = 0; i <= k; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; i + j <= k; ++j) v[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  return PowerSeries(std::move(v));
}

PowerSeries series_reciprocal(const PowerSeries& a) {
  if (a[0] == 0.0) throw InputError("series_reciprocal: zero constant term");
  const int k = a.order();
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v[0] = 1.0 / a[0];
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += a[j] * v[static_cast<std::size_t>(n - j)];
    v[static_cast<std::size_t>(n)] = -acc / a[0];
  }
  return PowerSeries(std::move(v));
}

PowerSeries series_div(const PowerSeries& a, const PowerSeries& b) {
  return series_mul(a, series_reciprocal(b));
}

PowerSeries series_sqrt(const PowerSeries& a) {
  if (!(a[0] > 0.0)) throw InputError("series_sqrt: constant term must be positive");
  const int k = a.order();
  std::vector<double> v(static_cast<std::size_t>(k) + 1, 0.0);
  v[0] = std::sqrt(a[0]);
  // (sum v_i s^i)^2 = a  =>  2 v_0 v_n = a_n - sum_{0<i<n} v_i v_{n-i}
  for (int n = 1; n <= k; ++n) {
    double acc = a[n];
    for (int i = 1; i < n; ++i) acc -= v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(n - i)];
    v[static_cast<std::size_t>(n)] = acc / (2.0 * v[0]);
  }
  return PowerSeries(std::move(v));
}

}  // namespace kpwalk
