#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "kpwalk/dist.hpp"
#include "kpwalk/kp_left.hpp"
#include "kpwalk/kp_right.hpp"
#include "kpwalk/sim.hpp"
#include "kpwalk/tandem.hpp"

/// JSON and CSV serialization of solver results. Every report document has
/// the same top-level keys: params, solution, sup_pmf, tail_bound and
/// diagnostics {oracle_tv, oracle_supnorm, iterations}.
namespace kpwalk::report {

using nlohmann::json;

json pmf_to_json(const IntegerPMF& pmf);
IntegerPMF pmf_from_json(const json& j);

struct Diagnostics {
  std::optional<double> oracle_tv;
  std::optional<double> oracle_supnorm;
  long iterations = 0;
  json extra = json::object();
};

json document(json params, json solution, const SupremumLaw& law, const Diagnostics& diag);

json step_params(const StepDistribution& step);
json tandem_params(const tandem::TandemParams& p);
json right_solution(const right::RightSolution& sol);
json left_solution(const left::LeftSolution& sol);
json sim_report(const sim::SimReport& r);

/// Rows x,pmf,cdf,tail_bound where tail_bound is P(sup > x) including the
/// unaccounted mass.
std::string to_csv(const SupremumLaw& law);

}  // namespace kpwalk::report
