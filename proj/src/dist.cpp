#include "kpwalk/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kpwalk/errors.hpp"
#include "kernel.hpp"

namespace kpwalk {

namespace {

bool is_open_probability(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

// ---------------------------------------------------------------------------
// IntegerPMF

IntegerPMF IntegerPMF::point(long x) { return IntegerPMF{x, x, {1.0}, 0.0, 0.0}; }

IntegerPMF IntegerPMF::from_atoms(const std::map<long, double>& atoms,
                                  double left_tail_mass, double right_tail_mass) {
  if (atoms.empty()) throw InputError("IntegerPMF: no atoms");
  IntegerPMF out;
  out.lo = atoms.begin()->first;
  out.hi = atoms.rbegin()->first;
  out.mass.assign(static_cast<std::size_t>(out.hi - out.lo + 1), 0.0);
  for (const auto& [x, m] : atoms) out.mass[static_cast<std::size_t>(x - out.lo)] = m;
  out.left_tail_mass = left_tail_mass;
  out.right_tail_mass = right_tail_mass;
  return out;
}

double IntegerPMF::at(long x) const {
  if (x < lo || x > hi) return 0.0;
  return mass[static_cast<std::size_t>(x - lo)];
}

double IntegerPMF::materialized_mass() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

double IntegerPMF::materialized_first_moment() const {
  double m = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) m += static_cast<double>(lo + static_cast<long>(i)) * mass[i];
  return m;
}

void IntegerPMF::validate(double tol) const {
  if (lo > hi) throw InputError("IntegerPMF: lo > hi");
  if (mass.size() != static_cast<std::size_t>(hi - lo + 1)) {
    throw InputError("IntegerPMF: mass array does not match [lo, hi]");
  }
  for (double m : mass) {
    if (!(m >= 0.0 && m <= 1.0)) throw InputError("IntegerPMF: entry is not a probability");
  }
  if (left_tail_mass < 0.0 || right_tail_mass < 0.0) {
    throw InputError("IntegerPMF: negative tail mass");
  }
  if (std::abs(total_mass() - 1.0) > tol) {
    std::ostringstream msg;
    msg << "IntegerPMF: total mass " << total_mass() << " differs from 1";
    throw InputError(msg.str());
  }
}

IntegerPMF convolve(const IntegerPMF& a, const IntegerPMF& b) {
  IntegerPMF out;
  out.lo = a.lo + b.lo;
  out.hi = a.hi + b.hi;
  out.mass.assign(a.mass.size() + b.mass.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    const double ai = a.mass[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < b.mass.size(); ++j) out.mass[i + j] += ai * b.mass[j];
  }
  // Pairs with a left tail and no right tail are left of the window; every
  // other pair touching a tail has unknown position and is put on the right.
  const double a_mid = a.materialized_mass();
  const double b_mid = b.materialized_mass();
  out.left_tail_mass = a.left_tail_mass * (b.left_tail_mass + b_mid) + a_mid * b.left_tail_mass;
  out.right_tail_mass = a.right_tail_mass * (b.left_tail_mass + b_mid + b.right_tail_mass) +
                        (a_mid + a.left_tail_mass) * b.right_tail_mass;
  return out;
}

IntegerPMF truncate_above(const IntegerPMF& a, long x_max) {
  if (x_max >= a.hi) return a;
  if (x_max < a.lo) throw InputError("truncate_above: cut below the window");
  IntegerPMF out = a;
  const auto keep = static_cast<std::size_t>(x_max - a.lo + 1);
  out.right_tail_mass += std::accumulate(a.mass.begin() + static_cast<long>(keep), a.mass.end(), 0.0);
  out.mass.resize(keep);
  out.hi = x_max;
  return out;
}

IntegerPMF negate(const IntegerPMF& a) {
  IntegerPMF out;
  out.lo = -a.hi;
  out.hi = -a.lo;
  out.mass.assign(a.mass.rbegin(), a.mass.rend());
  out.left_tail_mass = a.right_tail_mass;
  out.right_tail_mass = a.left_tail_mass;
  return out;
}

// ---------------------------------------------------------------------------
// StepDistribution

StepDistribution::StepDistribution(IntegerPMF finite, GeometricTail tail)
    : finite_(std::move(finite)), tail_(tail) {
  cumulative_.resize(finite_.mass.size());
  std::partial_sum(finite_.mass.begin(), finite_.mass.end(), cumulative_.begin());
}

StepDistribution step_from_right_tail(double xi, double r,
                                      const std::map<long, double>& negative_atoms,
                                      double tol) {
  if (!is_open_probability(xi) || !is_open_probability(r)) {
    throw InputError("right tail: xi and r must lie in (0, 1)");
  }
  if (negative_atoms.empty()) {
    throw InputError("right tail: no negative atoms, law is concentrated on a half-axis");
  }
  double total = 0.0;
  for (const auto& [x, m] : negative_atoms) {
    if (x >= 0) throw InputError("right tail: finite atoms must lie at x <= -1");
    if (!(m >= 0.0 && m <= 1.0)) throw InputError("right tail: atom is not a probability");
    total += m;
  }
  if (total <= 0.0) {
    throw InputError("right tail: no negative mass, law is concentrated on a half-axis");
  }
  if (std::abs(total + xi - 1.0) > tol) {
    std::ostringstream msg;
    msg << "right tail: negative atoms sum to " << total << " but 1 - xi = " << 1.0 - xi;
    throw InputError(msg.str());
  }
  return StepDistribution(IntegerPMF::from_atoms(negative_atoms),
                          GeometricTail{TailSide::Right, xi, r});
}

StepDistribution step_from_left_tail(double xi, double r, const IntegerPMF& positive_pmf,
                                     double tol) {
  if (!is_open_probability(xi) || !is_open_probability(r)) {
    throw InputError("left tail: xi and r must lie in (0, 1)");
  }
  if (positive_pmf.mass.empty() || positive_pmf.materialized_mass() <= 0.0) {
    throw InputError("left tail: no positive atoms, law is concentrated on a half-axis");
  }
  if (positive_pmf.lo < 1 || positive_pmf.left_tail_mass != 0.0) {
    throw InputError("left tail: finite atoms must lie at x >= 1");
  }
  for (double m : positive_pmf.mass) {
    if (!(m >= 0.0 && m <= 1.0)) throw InputError("left tail: atom is not a probability");
  }
  const double total = positive_pmf.materialized_mass() + positive_pmf.right_tail_mass;
  if (std::abs(total + xi - 1.0) > tol) {
    std::ostringstream msg;
    msg << "left tail: positive part has mass " << total << " but 1 - xi = " << 1.0 - xi;
    throw InputError(msg.str());
  }
  return StepDistribution(positive_pmf, GeometricTail{TailSide::Left, xi, r});
}

double StepDistribution::pmf(long x) const {
  if (tail_.side == TailSide::Right) {
    if (x >= 0) return tail_.xi * (1.0 - tail_.r) * std::pow(tail_.r, static_cast<double>(x));
  } else if (x <= 0) {
    return tail_.xi * (1.0 - tail_.r) * std::pow(tail_.r, static_cast<double>(-x));
  }
  return finite_.at(x);
}

namespace {

double finite_cdf(const IntegerPMF& f, const std::vector<double>& cum, long x) {
  if (x < f.lo) return f.left_tail_mass;
  if (x >= f.hi) return f.left_tail_mass + cum.back();
  return f.left_tail_mass + cum[static_cast<std::size_t>(x - f.lo)];
}

double finite_survival(const IntegerPMF& f, const std::vector<double>& cum, long x) {
  if (x >= f.hi) return f.right_tail_mass;
  if (x < f.lo) return cum.back() + f.right_tail_mass;
  return (cum.back() - cum[static_cast<std::size_t>(x - f.lo)]) + f.right_tail_mass;
}

}  // namespace

double StepDistribution::cdf(long x) const {
  const double r = tail_.r;
  if (tail_.side == TailSide::Right) {
    if (x >= 0) return 1.0 - tail_.xi * std::pow(r, static_cast<double>(x + 1));
    return finite_cdf(finite_, cumulative_, x);
  }
  if (x <= 0) return tail_.xi * std::pow(r, static_cast<double>(-x));
  return tail_.xi + finite_cdf(finite_, cumulative_, x);
}

double StepDistribution::survival(long x) const {
  const double r = tail_.r;
  if (tail_.side == TailSide::Right) {
    if (x >= 0) return tail_.xi * std::pow(r, static_cast<double>(x + 1));
    return finite_survival(finite_, cumulative_, x) + tail_.xi;
  }
  if (x < 0) return 1.0 - tail_.xi * std::pow(r, static_cast<double>(-x));
  return finite_survival(finite_, cumulative_, x);
}

double StepDistribution::mean() const {
  const double tail_moment = tail_.xi * tail_.r / (1.0 - tail_.r);
  const double finite_moment = finite_.materialized_first_moment();
  return tail_.side == TailSide::Right ? finite_moment + tail_moment
                                       : finite_moment - tail_moment;
}

double StepDistribution::pgf_lower() const {
  return tail_.side == TailSide::Right ? 0.0 : tail_.r;
}

double StepDistribution::pgf_upper() const {
  return tail_.side == TailSide::Right ? 1.0 / tail_.r
                                       : std::numeric_limits<double>::infinity();
}

double StepDistribution::pgf(double s) const {
  if (!(s > pgf_lower() && s < pgf_upper())) {
    std::ostringstream msg;
    msg << "pgf: s = " << s << " outside (" << pgf_lower() << ", " << pgf_upper() << ")";
    throw DomainError(msg.str());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < finite_.mass.size(); ++i) {
    const double m = finite_.mass[i];
    if (m != 0.0) sum += m * std::pow(s, static_cast<double>(finite_.lo + static_cast<long>(i)));
  }
  const double xi = tail_.xi;
  const double r = tail_.r;
  if (tail_.side == TailSide::Right) return sum + xi * (1.0 - r) / (1.0 - r * s);
  return sum + xi * (1.0 - r) / (1.0 - r / s);
}

IntegerPMF StepDistribution::materialize(long lo, long hi) const {
  if (lo > hi) throw InputError("materialize: empty window");
  IntegerPMF out;
  out.lo = lo;
  out.hi = hi;
  out.mass.resize(static_cast<std::size_t>(hi - lo + 1));
  for (long x = lo; x <= hi; ++x) out.mass[static_cast<std::size_t>(x - lo)] = pmf(x);
  out.left_tail_mass = cdf(lo - 1);
  out.right_tail_mass = survival(hi);
  return out;
}

long StepDistribution::support_lo(double eps) const {
  if (tail_.side == TailSide::Right) return finite_.lo;
  long x = 0;
  while (cdf(x - 1) >= eps) --x;
  return x;
}

long StepDistribution::support_hi(double eps) const {
  if (tail_.side == TailSide::Left) return finite_.hi;
  long x = 0;
  while (survival(x) >= eps) ++x;
  return x;
}

double mean(const StepDistribution& step) { return step.mean(); }

double pgf_eval(const StepDistribution& step, double s) { return step.pgf(s); }

double lundberg_point(const StepDistribution& step) {
  return detail::lundberg_point(detail::Kernel::from(step));
}

double lundberg_point(const IntegerPMF& step) {
  return detail::lundberg_point(detail::Kernel::from(step));
}

ChernoffBound chernoff_bound(const StepDistribution& step) {
  const auto b = detail::pgf_bracket(detail::Kernel::from(step));
  return {b.s_min, b.f_min};
}

ChernoffBound chernoff_bound(const IntegerPMF& step) {
  const auto b = detail::pgf_bracket(detail::Kernel::from(step));
  return {b.s_min, b.f_min};
}

// ---------------------------------------------------------------------------
// SupremumLaw

double SupremumLaw::survival(long x) const {
  if (x < 0) return 1.0;
  double tail = tail_bound;
  for (long k = max_x(); k > x; --k) tail += pmf[static_cast<std::size_t>(k)];
  return tail;
}

double tv_distance(const SupremumLaw& a, const SupremumLaw& b) {
  // Total variation between the laws of min(sup, K + 1), K the shorter window.
  const std::size_t n = std::min(a.pmf.size(), b.pmf.size());
  double sum = 0.0;
  double rest_a = 1.0;
  double rest_b = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += std::abs(a.pmf[i] - b.pmf[i]);
    rest_a -= a.pmf[i];
    rest_b -= b.pmf[i];
  }
  return 0.5 * (sum + std::abs(rest_a - rest_b));
}

double survival_sup_norm(const SupremumLaw& a, const SupremumLaw& b, long x_max) {
  double worst = 0.0;
  for (long x = 0; x <= x_max; ++x) worst = std::max(worst, std::abs(a.survival(x) - b.survival(x)));
  return worst;
}

}  // namespace kpwalk
