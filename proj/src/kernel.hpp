#pragma once

#include <optional>
#include <vector>

#include "kpwalk/dist.hpp"

namespace kpwalk::detail {

// Uniform view of a step law for the dynamic-programming oracles: a list of
// finite atoms plus, optionally, a symbolic geometric tail.
struct Kernel {
  std::vector<long> atom_x;
  std::vector<double> atom_p;
  std::optional<GeometricTail> tail;
  double unlocated = 0.0;  // finite-part tail masses with unknown position

  static Kernel from(const StepDistribution& step);
  static Kernel from(const IntegerPMF& pmf);

  double pmf(long x) const;
  double cdf(long x) const;
  double mean() const;
  double pgf(double s) const;
  double pgf_upper() const;
  long min_atom() const { return atom_x.empty() ? 0 : atom_x.front(); }
  long max_atom() const { return atom_x.empty() ? 0 : atom_x.back(); }
};

struct PgfBracket {
  double s_min;  // minimiser of the pgf on (1, root)
  double f_min;
  double root;   // root of pgf = 1 above 1
};

// Requires a negative mean.
PgfBracket pgf_bracket(const Kernel& k);
double lundberg_point(const Kernel& k);

}  // namespace kpwalk::detail
