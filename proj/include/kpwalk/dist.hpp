#pragma once

#include <map>
#include <vector>

namespace kpwalk {

/// Probability mass function on a contiguous integer window [lo, hi].
///
/// Mass outside the window is not located, only accounted for: everything
/// below `lo` is summarised by `left_tail_mass`, everything above `hi` by
/// `right_tail_mass`. A PMF is well formed when every entry is a probability
/// and entries plus tail masses add up to one.
struct IntegerPMF {
  long lo = 0;
  long hi = 0;
  std::vector<double> mass{1.0};
  double left_tail_mass = 0.0;
  double right_tail_mass = 0.0;

  static IntegerPMF point(long x);
  static IntegerPMF from_atoms(const std::map<long, double>& atoms,
                               double left_tail_mass = 0.0,
                               double right_tail_mass = 0.0);

  double at(long x) const;
  double materialized_mass() const;
  double total_mass() const { return materialized_mass() + left_tail_mass + right_tail_mass; }
  /// Sum of x * P(X = x) over the materialized atoms only.
  double materialized_first_moment() const;
  /// Throws InputError unless the invariants hold within `tol`.
  void validate(double tol = 1e-12) const;

  bool operator==(const IntegerPMF&) const = default;
};

/// Exact convolution of the materialized parts. Any product involving a tail
/// goes to a tail of the result, so result tails never exceed the sum of the
/// input tails.
IntegerPMF convolve(const IntegerPMF& a, const IntegerPMF& b);

/// Moves atoms above `x_max` into the right tail.
IntegerPMF truncate_above(const IntegerPMF& a, long x_max);

/// Reflects x -> -x.
IntegerPMF negate(const IntegerPMF& a);

enum class TailSide { Left, Right };

/// Right: P(X >= x) = xi * r^x for x >= 0.
/// Left:  P(X <= x) = xi * r^(-x) for x <= 0.
struct GeometricTail {
  TailSide side = TailSide::Right;
  double xi = 0.5;
  double r = 0.5;
};

/// Integer step law: finitely many exact atoms strictly on one side of zero
/// and a symbolic geometric tail covering zero and the other side.
class StepDistribution {
 public:
  const IntegerPMF& finite_part() const { return finite_; }
  const GeometricTail& tail() const { return tail_; }
  TailSide side() const { return tail_.side; }
  double xi() const { return tail_.xi; }
  double r() const { return tail_.r; }

  /// P(X = x).
  double pmf(long x) const;
  /// P(X <= x).
  double cdf(long x) const;
  /// P(X > x).
  double survival(long x) const;

  double mean() const;
  /// E[s^X] inside the convergence region; throws DomainError outside.
  double pgf(double s) const;
  /// Open interval on which pgf() is defined.
  double pgf_lower() const;
  double pgf_upper() const;

  /// Atoms on [lo, hi]; mass outside goes to the two tails in closed form.
  IntegerPMF materialize(long lo, long hi) const;
  /// Smallest and largest x such that the mass beyond is below `eps`.
  long support_lo(double eps) const;
  long support_hi(double eps) const;

 private:
  friend StepDistribution step_from_right_tail(double, double,
                                               const std::map<long, double>&,
                                               double);
  friend StepDistribution step_from_left_tail(double, double, const IntegerPMF&,
                                              double);
  StepDistribution(IntegerPMF finite, GeometricTail tail);

  IntegerPMF finite_;
  GeometricTail tail_;
  std::vector<double> cumulative_;  // cumulative_[i] = finite mass on [lo, lo+i]
};

StepDistribution step_from_right_tail(double xi, double r,
                                      const std::map<long, double>& negative_atoms,
                                      double tol = 1e-12);

StepDistribution step_from_left_tail(double xi, double r,
                                     const IntegerPMF& positive_pmf,
                                     double tol = 1e-12);

/// Free-function spelling of StepDistribution::mean / pgf.
double mean(const StepDistribution& step);
double pgf_eval(const StepDistribution& step, double s);

/// Adjustment coefficient: a point s > 1 with E[s^X] <= 1. The process s^S_n
/// is then a supermartingale, so P(sup S_n >= x) <= s^-x for every x >= 0.
/// Requires a negative mean.
double lundberg_point(const StepDistribution& step);
double lundberg_point(const IntegerPMF& step);

/// Chernoff bound: min over s in (1, lundberg) of E[s^X], with P(S_n >= 0)
/// <= value^n.
struct ChernoffBound {
  double s;
  double value;
};
ChernoffBound chernoff_bound(const StepDistribution& step);
ChernoffBound chernoff_bound(const IntegerPMF& step);

/// Law of sup_n S_n on 0..K together with the unaccounted mass above K.
struct SupremumLaw {
  std::vector<double> pmf;
  double tail_bound = 0.0;

  long max_x() const { return static_cast<long>(pmf.size()) - 1; }
  /// P(sup > x) computed from the materialized pmf.
  double survival(long x) const;
};

/// Total variation between the laws of min(sup, K + 1), where K is the
/// shorter of the two windows; mass above K is compared as one lumped bin.
double tv_distance(const SupremumLaw& a, const SupremumLaw& b);
/// max_x |P_a(sup > x) - P_b(sup > x)| over x in [0, x_max].
double survival_sup_norm(const SupremumLaw& a, const SupremumLaw& b, long x_max);

}  // namespace kpwalk
