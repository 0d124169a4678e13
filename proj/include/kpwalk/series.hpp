#pragma once

#include <vector>

namespace kpwalk {

/// Power series truncated after the s^K term.
class PowerSeries {
 public:
  /// Coefficients of s^0 .. s^K; must be nonempty.
  explicit PowerSeries(std::vector<double> coeffs);

  static PowerSeries constant(double c, int order);
  /// 1 / (1 - q s) = sum q^k s^k.
  static PowerSeries geometric(double q, int order);
  /// s^k.
  static PowerSeries monomial(int k, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  double eval(double s) const;
  double coefficient_sum() const;
  PowerSeries truncated(int order) const;

  bool operator==(const PowerSeries&) const = default;

 private:
  std::vector<double> coeffs_;
};

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(double c, const PowerSeries& a);

/// Cauchy product truncated to the smaller of the two orders.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);
/// 1 / a; throws InputError when a[0] == 0.
PowerSeries series_reciprocal(const PowerSeries& a);
/// a / b via the reciprocal of b.
PowerSeries series_div(const PowerSeries& a, const PowerSeries& b);
/// Principal square root; throws InputError unless a[0] > 0.
PowerSeries series_sqrt(const PowerSeries& a);

}  // namespace kpwalk
