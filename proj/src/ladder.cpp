#include "kpwalk/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kernel.hpp"
#include "kpwalk/errors.hpp"

namespace kpwalk::ladder {

using detail::Kernel;

Path Path::from_steps(std::span<const long> steps) {
  Path p;
  p.steps.assign(steps.begin(), steps.end());
  p.partials.resize(steps.size() + 1);
  p.partials[0] = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) p.partials[k + 1] = p.partials[k] + steps[k];
  return p;
}

LadderDecomposition decompose(const Path& path) {
  LadderDecomposition out;
  long running_max = 0;
  for (std::size_t n = 1; n < path.partials.size(); ++n) {
    const long s = path.partials[n];
    if (s >= running_max) {
      out.weak_indices.push_back(static_cast<long>(n));
      out.weak_heights.push_back(s);
    }
    if (s > running_max) {
      out.strict_indices.push_back(static_cast<long>(n));
      out.strict_heights.push_back(s);
      running_max = s;
    }
  }
  return out;
}

namespace {

// One step of the walk restricted to states [floor, 0].
struct Transition {
  std::vector<double> next;      // mass landing on [floor, 0]
  std::vector<double> positive;  // mass landing on heights 1..cap
  double overshoot = 0.0;        // mass landing above cap
  double dropped = 0.0;          // mass landing below floor
  double dropped_weighted = 0.0; // sum of mass * s^u over landing points u < floor
};

void advance(const Kernel& k, long floor, long cap, double s_b,
             const std::vector<double>& cur, Transition& out) {
  const std::size_t width = cur.size();
  out.next.assign(width, 0.0);
  out.positive.assign(static_cast<std::size_t>(cap) + 1, 0.0);
  out.overshoot = 0.0;
  out.dropped = 0.0;
  out.dropped_weighted = 0.0;

  for (std::size_t i = 0; i < width; ++i) {
    const double m = cur[i];
    if (m == 0.0) continue;
    const long v = floor + static_cast<long>(i);
    for (std::size_t a = 0; a < k.atom_x.size(); ++a) {
      const long u = v + k.atom_x[a];
      const double q = m * k.atom_p[a];
      if (u > cap) {
        out.overshoot += q;
      } else if (u > 0) {
        out.positive[static_cast<std::size_t>(u)] += q;
      } else if (u >= floor) {
        out.next[static_cast<std::size_t>(u - floor)] += q;
      } else {
        out.dropped += q;
        out.dropped_weighted += q * std::pow(s_b, static_cast<double>(u));
      }
    }
  }

  if (!k.tail) return;
  const double xi = k.tail->xi;
  const double r = k.tail->r;
  const double c = xi * (1.0 - r);
  if (k.tail->side == TailSide::Right) {
    // Steps x >= 0 with P(X = x) = c r^x.
    double g = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      g = r * g + cur[i];
      out.next[i] += c * g;
    }
    double rh = r;
    for (long h = 1; h <= cap; ++h, rh *= r) out.positive[static_cast<std::size_t>(h)] += c * rh * g;
    out.overshoot += xi * std::pow(r, static_cast<double>(cap + 1)) * g;
  } else {
    // Steps x <= 0 with P(X = x) = c r^-x.
    double h = 0.0;
    for (std::size_t i = width; i-- > 0;) {
      h = r * h + cur[i];
      out.next[i] += c * h;
    }
    const double below = xi * r * h;
    out.dropped += below;
    out.dropped_weighted += below * std::pow(s_b, static_cast<double>(floor - 1));
  }
}

long default_floor(const Kernel& k, double s_b) {
  double depth = std::log(1e14) / std::log(s_b);
  if (k.tail) depth = std::max(depth, 40.0 / std::abs(std::log(k.tail->r)));
  depth = std::clamp(depth, 16.0, 20000.0);
  return -static_cast<long>(std::ceil(depth));
}

LadderData run_ladder_dp(const Kernel& k, const LadderOptions& opt) {
  if (!(k.mean() < 0.0)) throw DriftError("ladder_dp: walk has nonnegative drift");
  if (opt.height_cap < 1) throw InputError("ladder_dp: height_cap must be >= 1");
  if (opt.horizon < 0) throw InputError("ladder_dp: negative horizon");
  const double s_b = detail::lundberg_point(k);
  const long floor = opt.floor < 0 ? opt.floor : default_floor(k, s_b);
  const std::size_t width = static_cast<std::size_t>(-floor) + 1;

  // weight[i] = s^v bounds P(walk from v ever reaches 0 or above).
  std::vector<double> weight(width);
  for (std::size_t i = 0; i < width; ++i) weight[i] = std::pow(s_b, static_cast<double>(floor + static_cast<long>(i)));

  // strict: walks with all S_k <= 0; weak: walks with S_1..S_{n-1} < 0.
  std::vector<double> strict(width, 0.0);
  std::vector<double> weak(width, 0.0);
  strict.back() = 1.0;
  weak.back() = 1.0;

  LadderData out;
  out.floor = floor;
  out.L_mass.assign(static_cast<std::size_t>(opt.height_cap) + 1, 0.0);
  double overshoot = 0.0;
  double strict_lost = 0.0;
  double weak_lost = 0.0;
  double strict_inflight = 1.0;
  double weak_inflight = 1.0;
  Transition t;

  const long limit = opt.horizon > 0 ? opt.horizon : opt.max_horizon;
  long n = 0;
  while (n < limit) {
    ++n;
    const double strict_mass = std::accumulate(strict.begin(), strict.end(), 0.0);
    advance(k, floor, opt.height_cap, s_b, strict, t);
    for (std::size_t h = 1; h < t.positive.size(); ++h) out.L_mass[h] += t.positive[h];
    overshoot += t.overshoot;
    strict_lost += t.dropped_weighted / s_b + strict_mass * k.unlocated;
    strict.swap(t.next);

    const double weak_mass = std::accumulate(weak.begin(), weak.end(), 0.0);
    advance(k, floor, opt.height_cap, s_b, weak, t);
    out.zeta += t.next.back();
    t.next.back() = 0.0;
    weak_lost += t.dropped_weighted + weak_mass * k.unlocated;
    weak.swap(t.next);

    strict_inflight = 0.0;
    weak_inflight = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      strict_inflight += strict[i] * weight[i] / s_b;
      weak_inflight += weak[i] * weight[i];
    }
    if (opt.horizon == 0 && strict_inflight < opt.tolerance * 1e-2 &&
        weak_inflight < opt.tolerance * 1e-2) {
      break;
    }
  }

  out.horizon = n;
  out.p = std::accumulate(out.L_mass.begin(), out.L_mass.end(), 0.0) + overshoot;
  out.p_bound = strict_lost + strict_inflight;
  out.L_tail_bound = overshoot + out.p_bound;
  out.zeta_bound = weak_lost + weak_inflight;
  if (out.p_bound > opt.tolerance || out.zeta_bound > opt.tolerance) {
    std::ostringstream msg;
    msg << "ladder_dp: truncation bound (p " << out.p_bound << ", zeta " << out.zeta_bound
        << ") exceeds tolerance " << opt.tolerance << " after " << n << " steps";
    throw ValidationError(msg.str());
  }
  return out;
}

ZetaEstimate run_zeta_series(const Kernel& k, long n_max) {
  if (n_max < 1) throw InputError("zeta_series: n_max must be >= 1");
  const auto bracket = detail::pgf_bracket(k);
  const double s_b = detail::lundberg_point(k);
  const double f_min = bracket.f_min;
  const double visits = 1.0 / (1.0 - f_min);  // E[number of visits to 0 from 0]

  const long step_hi = std::max(k.max_atom(), 0L);

  // P(sup >= y) <= s_b^-y sizes both ends of the window.
  const long below = static_cast<long>(std::ceil(std::min(std::log(1e18) / std::log(s_b), 20000.0)));
  const long above = std::max(4 * std::max(step_hi, 1L) + 64, below + step_hi);
  const long lo = -below;
  const std::size_t width = static_cast<std::size_t>(above - lo + 1);
  const std::size_t zero = static_cast<std::size_t>(-lo);

  std::vector<double> cur(width, 0.0);
  std::vector<double> next(width, 0.0);
  cur[zero] = 1.0;

  ZetaEstimate out;
  double log_sum = 0.0;
  double lost_bound = 0.0;
  double remainder = visits;
  long n = 0;
  while (n < n_max) {
    ++n;
    std::fill(next.begin(), next.end(), 0.0);
    double dropped_weighted = 0.0;
    double dropped_above = 0.0;
    double cur_mass = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      const double m = cur[i];
      if (m == 0.0) continue;
      cur_mass += m;
      const long v = lo + static_cast<long>(i);
      for (std::size_t j = 0; j < k.atom_x.size(); ++j) {
        const long u = v + k.atom_x[j];
        const double q = m * k.atom_p[j];
        if (u < lo) {
          dropped_weighted += q * std::pow(s_b, static_cast<double>(u));
        } else if (u > above) {
          dropped_above += q;
        } else {
          next[static_cast<std::size_t>(u - lo)] += q;
        }
      }
    }
    // Geometric tail by a running sum: T(u) = r T(u -/+ 1) + c m(u).
    if (k.tail) {
      const double r = k.tail->r;
      const double c = k.tail->xi * (1.0 - r);
      double T = 0.0;
      if (k.tail->side == TailSide::Right) {
        for (std::size_t i = 0; i < width; ++i) {
          T = T * r + c * cur[i];
          next[i] += T;
        }
        dropped_above += T * r / (1.0 - r);
      } else {
        for (std::size_t i = width; i-- > 0;) {
          T = T * r + c * cur[i];
          next[i] += T;
        }
        dropped_weighted += T * std::pow(s_b, static_cast<double>(lo)) * r / (s_b - r);
      }
    }
    cur.swap(next);

    const double p0 = cur[zero];
    out.return_probabilities.push_back(p0);
    log_sum += p0 / static_cast<double>(n);
    lost_bound += (dropped_weighted + dropped_above + cur_mass * k.unlocated) *
                  visits / static_cast<double>(n + 1);
    remainder = std::pow(f_min, static_cast<double>(n + 1)) /
                (static_cast<double>(n + 1) * (1.0 - f_min));
    if (remainder < 1e-15) break;
  }

  out.terms = n;
  out.value = 1.0 - std::exp(-log_sum);
  out.bound = remainder + lost_bound;
  if (out.bound > 1e-7) {
    std::ostringstream msg;
    msg << "zeta_series: certified remainder " << out.bound << " after " << n
        << " terms does not converge";
    throw ValidationError(msg.str());
  }
  return out;
}

}  // namespace

LadderData ladder_dp(const StepDistribution& step, const LadderOptions& options) {
  return run_ladder_dp(Kernel::from(step), options);
}

LadderData ladder_dp(const IntegerPMF& step, const LadderOptions& options) {
  return run_ladder_dp(Kernel::from(step), options);
}

ZetaEstimate zeta_series(const StepDistribution& step, long n_max) {
  return run_zeta_series(Kernel::from(step), n_max);
}

ZetaEstimate zeta_series(const IntegerPMF& step, long n_max) {
  return run_zeta_series(Kernel::from(step), n_max);
}

double validated_zeta(const ZetaEstimate& series, const LadderData& dp, double tol) {
  const double gap = std::abs(series.value - dp.zeta);
  if (gap > tol) {
    std::ostringstream msg;
    msg << "zeta: series value " << series.value << " and ladder DP value " << dp.zeta
        << " differ by " << gap << " (tolerance " << tol << ")";
    throw ValidationError(msg.str());
  }
  return series.value;
}

}  // namespace kpwalk::ladder
