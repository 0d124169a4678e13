#include "kernel.hpp"

#include <cmath>
#include <limits>

#include "kpwalk/errors.hpp"
#include "kpwalk/numeric.hpp"

namespace kpwalk::detail {

Kernel Kernel::from(const StepDistribution& step) {
  Kernel k = from(step.finite_part());
  k.tail = step.tail();
  return k;
}

Kernel Kernel::from(const IntegerPMF& pmf) {
  Kernel k;
  for (std::size_t i = 0; i < pmf.mass.size(); ++i) {
    if (pmf.mass[i] > 0.0) {
      k.atom_x.push_back(pmf.lo + static_cast<long>(i));
      k.atom_p.push_back(pmf.mass[i]);
    }
  }
  k.unlocated = pmf.left_tail_mass + pmf.right_tail_mass;
  return k;
}

double Kernel::pmf(long x) const {
  if (tail) {
    const double c = tail->xi * (1.0 - tail->r);
    if (tail->side == TailSide::Right && x >= 0) return c * std::pow(tail->r, static_cast<double>(x));
    if (tail->side == TailSide::Left && x <= 0) return c * std::pow(tail->r, static_cast<double>(-x));
  }
  for (std::size_t i = 0; i < atom_x.size(); ++i) {
    if (atom_x[i] == x) return atom_p[i];
  }
  return 0.0;
}

double Kernel::cdf(long x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < atom_x.size() && atom_x[i] <= x; ++i) acc += atom_p[i];
  if (tail) {
    const double xi = tail->xi;
    const double r = tail->r;
    if (tail->side == TailSide::Right) {
      if (x >= 0) acc += xi * (1.0 - std::pow(r, static_cast<double>(x + 1)));
    } else {
      acc += x <= 0 ? xi * std::pow(r, static_cast<double>(-x)) : xi;
    }
  }
  return acc;
}

double Kernel::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < atom_x.size(); ++i) m += static_cast<double>(atom_x[i]) * atom_p[i];
  if (tail) {
    const double t = tail->xi * tail->r / (1.0 - tail->r);
    m += tail->side == TailSide::Right ? t : -t;
  }
  return m;
}

double Kernel::pgf_upper() const {
  if (tail && tail->side == TailSide::Right) return 1.0 / tail->r;
  return std::numeric_limits<double>::infinity();
}

double Kernel::pgf(double s) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < atom_x.size(); ++i) sum += atom_p[i] * std::pow(s, static_cast<double>(atom_x[i]));
  if (tail) {
    const double c = tail->xi * (1.0 - tail->r);
    sum += tail->side == TailSide::Right ? c / (1.0 - tail->r * s) : c / (1.0 - tail->r / s);
  }
  return sum;
}

PgfBracket pgf_bracket(const Kernel& k) {
  if (!(k.mean() < 0.0)) throw DriftError("walk has nonnegative drift");
  auto f = [&](double s) { return k.pgf(s); };
  double upper;
  if (std::isfinite(k.pgf_upper())) {
    upper = k.pgf_upper() * (1.0 - 1e-12);
  } else {
    if (k.max_atom() <= 0) {
      // Never rises: any s works, the bound P(sup > 0) = 0 is exact.
      return {2.0, k.pgf(2.0), std::numeric_limits<double>::infinity()};
    }
    double width = 1e-2;
    upper = 1.0 + width;
    while (f(upper) <= 1.0) {
      width *= 2.0;
      upper = 1.0 + width;
    }
  }
  const auto minimum = numeric::golden_min(f, 1.0, upper);
  const double root = numeric::bisect([&](double s) { return f(s) - 1.0; }, minimum.x, upper, 1e-15);
  return {minimum.x, minimum.value, root};
}

double lundberg_point(const Kernel& k) {
  const auto b = pgf_bracket(k);
  if (!std::isfinite(b.root)) return 1e6;
  double s = b.root - 1e-9 * (b.root - b.s_min);
  while (k.pgf(s) > 1.0) s = b.s_min + 0.5 * (s - b.s_min);
  return s;
}

}  // namespace kpwalk::detail
