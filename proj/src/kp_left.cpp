#include "kpwalk/kp_left.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kpwalk/errors.hpp"

namespace kpwalk::left {

namespace {

void require_left(const StepDistribution& step, const char* who) {
  if (step.side() != TailSide::Left) {
    throw InputError(std::string(who) + ": step law has a right tail");
  }
  if (!(step.mean() < 0.0)) {
    std::ostringstream msg;
    msg << who << ": mean step " << step.mean() << " is not negative";
    throw DriftError(msg.str());
  }
}

void require_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) throw InputError("zeta must lie in [0, 1)");
}

// (1 - zeta) L[x, infinity) = P(X > x - 1) + (1 - r) sum_{m >= x} P(X > m).
double scaled_tail_from(const StepDistribution& step, long x) {
  const auto& fin = step.finite_part();
  double sum_survival = 0.0;
  for (long m = std::max(x, 0L); m < fin.hi; ++m) sum_survival += step.survival(m);
  // Unlocated mass above hi: counted once per position is unknowable, count it once.
  sum_survival += fin.right_tail_mass;
  return step.survival(x - 1) + (1.0 - step.r()) * sum_survival;
}

}  // namespace

double LadderMeasure::total() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

LadderMeasure ladder_measure(const StepDistribution& step, double zeta, long x_max) {
  require_left(step, "ladder_measure");
  require_zeta(zeta);
  const double scale = 1.0 / (1.0 - zeta);
  if (x_max <= 0) {
    x_max = 1;
    while (x_max < step.finite_part().hi && scaled_tail_from(step, x_max + 1) * scale >= 1e-12) ++x_max;
  }
  LadderMeasure L;
  L.zeta = zeta;
  L.mass.assign(static_cast<std::size_t>(x_max) + 1, 0.0);
  const double r = step.r();
  for (long x = 1; x <= x_max; ++x) {
    L.mass[static_cast<std::size_t>(x)] = (step.pmf(x) + (1.0 - r) * step.survival(x)) * scale;
  }
  L.tail_bound = scaled_tail_from(step, x_max + 1) * scale;
  return L;
}

double ladder_pgf(const StepDistribution& step, double zeta, double s) {
  require_left(step, "ladder_pgf");
  require_zeta(zeta);
  if (!(s > -1.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << "ladder_pgf: s = " << s << " outside (-1, 1]";
    throw DomainError(msg.str());
  }
  const double r = step.r();
  if (s == 1.0) return r + (1.0 - r) * step.mean();
  const auto& fin = step.finite_part();
  double f_plus = 0.0;
  for (std::size_t i = 0; i < fin.mass.size(); ++i) {
    f_plus += fin.mass[i] * std::pow(s, static_cast<double>(fin.lo + static_cast<long>(i)));
  }
  const double g = (1.0 - r) / (1.0 - s);
  return (1.0 - g) * f_plus + s * g * (1.0 - step.cdf(0));
}

SupremumLaw psi_sup_law(const LadderMeasure& L, double p, long K, long* terms) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("psi_sup_law: p must lie in (0, 1)");
  if (K < 0) throw InputError("psi_sup_law: K must be >= 0");
  // Ladder height law H = L / p on 1..x_max.
  IntegerPMF height;
  height.lo = 1;
  height.hi = std::max(1L, L.x_max());
  height.mass.assign(L.mass.begin() + 1, L.mass.end());
  if (height.mass.empty()) height.mass.push_back(0.0);
  for (auto& m : height.mass) m /= p;
  height.right_tail_mass = L.tail_bound / p;
  if (height.hi > K && K >= 1) height = truncate_above(height, K);

  SupremumLaw law;
  law.pmf.assign(static_cast<std::size_t>(K) + 1, 0.0);
  IntegerPMF power = IntegerPMF::point(0);
  double weight = 1.0 - p;  // (1 - p) p^n
  long n = 0;
  while (true) {
    for (long x = power.lo; x <= std::min(power.hi, K); ++x) {
      law.pmf[static_cast<std::size_t>(x)] += weight * power.at(x);
    }
    if (power.lo + 1 > K) break;                       // H^{(n+1)*} lives on [n+1, ...)
    if (std::pow(p, static_cast<double>(n + 1)) / (1.0 - p) < 1e-12) break;
    power = convolve(power, height);
    if (power.hi > K) power = truncate_above(power, K);
    weight *= p;
    ++n;
  }
  if (terms) *terms = n;
  law.tail_bound = std::max(0.0, 1.0 - std::accumulate(law.pmf.begin(), law.pmf.end(), 0.0));
  return law;
}

PowerSeries corollary_mgf(const StepDistribution& step, double zeta, int K) {
  require_left(step, "corollary_mgf");
  require_zeta(zeta);
  if (K < 0) throw InputError("corollary_mgf: K must be >= 0");
  const double r = step.r();
  std::vector<double> fp(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k) fp[static_cast<std::size_t>(k)] = step.pmf(k);
  const PowerSeries f_plus(std::move(fp));
  const PowerSeries ones = PowerSeries::geometric(1.0, K);          // 1 / (1 - s)
  const PowerSeries s_ones = series_mul(PowerSeries::monomial(1, K), ones);

  // (1 - (1-r)/(1-s)) F+(s) + s (1-r)/(1-s) (1 - F(0))
  const PowerSeries ladder = f_plus - (1.0 - r) * series_mul(f_plus, ones) +
                             ((1.0 - r) * (1.0 - step.cdf(0))) * s_ones;
  const PowerSeries denominator = PowerSeries::constant(1.0 - zeta, K) - ladder;
  const double numerator = 1.0 - zeta - r - (1.0 - r) * step.mean();
  return numerator * series_reciprocal(denominator);
}

LeftSolution solve(const StepDistribution& step, int K, const SolveOptions& options) {
  require_left(step, "kp_left");
  if (K < 1) throw InputError("kp_left: K must be >= 1");

  LeftSolution sol;
  sol.dp = ladder::ladder_dp(step, options.dp);
  sol.zeta_estimate = ladder::zeta_series(step, options.zeta_terms);
  sol.zeta = ladder::validated_zeta(sol.zeta_estimate, sol.dp, options.zeta_tol);

  const double r = step.r();
  sol.p = (r + (1.0 - r) * step.mean()) / (1.0 - sol.zeta);
  if (!(sol.p > 0.0 && sol.p < 1.0)) {
    std::ostringstream msg;
    msg << "kp_left: p = " << sol.p << " outside (0, 1)";
    throw ValidationError(msg.str());
  }
  if (std::abs(sol.p - sol.dp.p) > options.p_tol + sol.dp.p_bound) {
    std::ostringstream msg;
    msg << "kp_left: p = " << sol.p << " disagrees with ladder DP p = " << sol.dp.p;
    throw ValidationError(msg.str());
  }

  sol.L = ladder_measure(step, sol.zeta);
  sol.sup = psi_sup_law(sol.L, sol.p, K, &sol.psi_terms);
  sol.mgf = corollary_mgf(step, sol.zeta, K);
  for (int k = 0; k <= K; ++k) {
    sol.route_gap = std::max(sol.route_gap, std::abs(sol.mgf[k] - sol.sup.pmf[static_cast<std::size_t>(k)]));
  }
  if (sol.route_gap > options.route_tol) {
    std::ostringstream msg;
    msg << "kp_left: psi-convolution and M(s) routes differ by " << sol.route_gap;
    throw ValidationError(msg.str());
  }
  return sol;
}

}  // namespace kpwalk::left
