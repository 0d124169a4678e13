#include "kpwalk/report.hpp"

#include <iomanip>
#include <sstream>

#include "kpwalk/errors.hpp"

namespace kpwalk::report {

json pmf_to_json(const IntegerPMF& pmf) {
  return json{{"lo", pmf.lo},
              {"hi", pmf.hi},
              {"mass", pmf.mass},
              {"left_tail_mass", pmf.left_tail_mass},
              {"right_tail_mass", pmf.right_tail_mass}};
}

IntegerPMF pmf_from_json(const json& j) {
  try {
    IntegerPMF pmf;
    pmf.lo = j.at("lo").get<long>();
    pmf.hi = j.at("hi").get<long>();
    pmf.mass = j.at("mass").get<std::vector<double>>();
    pmf.left_tail_mass = j.at("left_tail_mass").get<double>();
    pmf.right_tail_mass = j.at("right_tail_mass").get<double>();
    pmf.validate();
    return pmf;
  } catch (const json::exception& e) {
    throw InputError(std::string("IntegerPMF json: ") + e.what());
  }
}

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json document(json params, json solution, const SupremumLaw& law, const Diagnostics& diag) {
  json diagnostics = diag.extra;
  diagnostics["oracle_tv"] = optional_number(diag.oracle_tv);
  diagnostics["oracle_supnorm"] = optional_number(diag.oracle_supnorm);
  diagnostics["iterations"] = diag.iterations;
  return json{{"params", std::move(params)},
              {"solution", std::move(solution)},
              {"sup_pmf", law.pmf},
              {"tail_bound", law.tail_bound},
              {"diagnostics", std::move(diagnostics)}};
}

json step_params(const StepDistribution& step) {
  return json{{"side", step.side() == TailSide::Right ? "right" : "left"},
              {"xi", step.xi()},
              {"r", step.r()},
              {"mean", step.mean()},
              {"finite_part", pmf_to_json(step.finite_part())}};
}

json tandem_params(const tandem::TandemParams& p) {
  return json{{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma},
              {"a", p.a},         {"r", p.r},       {"b", p.b}};
}

json right_solution(const right::RightSolution& sol) {
  return json{{"p", sol.p}, {"zeta", nullptr}, {"s_star", sol.s_star}, {"decay", sol.decay}};
}

json left_solution(const left::LeftSolution& sol) {
  return json{{"p", sol.p},
              {"zeta", sol.zeta},
              {"zeta_bound", sol.zeta_estimate.bound},
              {"p_ladder_dp", sol.dp.p},
              {"zeta_ladder_dp", sol.dp.zeta},
              {"route_gap", sol.route_gap},
              {"mgf", sol.mgf.coeffs()}};
}

json sim_report(const sim::SimReport& r) {
  auto hist = [](const sim::Histogram& h) {
    json out = json::object();
    for (const auto& [k, v] : h) out[std::to_string(k)] = v;
    return out;
  };
  return json{{"seed", r.seed},
              {"n_samples", r.n_samples},
              {"histogram", hist(r.histogram)},
              {"busy_period", hist(r.busy_period)},
              {"dissociations", hist(r.dissociations)},
              {"occupancy", hist(r.occupancy)},
              {"steps", r.steps},
              {"nm_correlation", r.nm_correlation},
              {"unstable", r.unstable}};
}

std::string to_csv(const SupremumLaw& law) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "x,pmf,cdf,tail_bound\n";
  double cdf = 0.0;
  for (std::size_t x = 0; x < law.pmf.size(); ++x) {
    cdf += law.pmf[x];
    out << x << ',' << law.pmf[x] << ',' << cdf << ',' << law.survival(static_cast<long>(x)) << '\n';
  }
  return out.str();
}

}  // namespace kpwalk::report
