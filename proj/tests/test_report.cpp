#include <sstream>
#include <string>

#include "doctest.h"
#include "kpwalk/kp_left.hpp"
#include "kpwalk/kp_right.hpp"
#include "kpwalk/report.hpp"

using namespace kpwalk;
using doctest::Approx;

TEST_CASE("documents carry the fixed top-level keys") {
  const auto step = step_from_right_tail(0.4, 0.5, {{-1, 0.6}});
  const auto sol = right::solve(step);
  const auto law = right::sup_law(sol, 10);
  report::Diagnostics diag;
  diag.oracle_tv = 1e-12;
  diag.iterations = 7;
  const auto doc = report::document(report::step_params(step), report::right_solution(sol), law, diag);
  for (const char* key : {"params", "solution", "sup_pmf", "tail_bound", "diagnostics"}) CHECK(doc.contains(key));
  CHECK(doc["diagnostics"]["oracle_tv"].get<double>() == Approx(1e-12));
  CHECK(doc["diagnostics"]["oracle_supnorm"].is_null());
  CHECK(doc["diagnostics"]["iterations"] == 7);
  CHECK(doc["solution"]["zeta"].is_null());
  CHECK(doc["sup_pmf"].size() == 11);
  CHECK(doc["params"]["side"] == "right");
}

TEST_CASE("left solutions report zeta and its certificate") {
  const auto step = step_from_left_tail(0.6, 0.5, IntegerPMF::from_atoms({{1, 0.4}}));
  const auto sol = left::solve(step, 16);
  const auto j = report::left_solution(sol);
  CHECK(j["zeta"].get<double>() == Approx(sol.zeta));
  CHECK(j.contains("zeta_bound"));
  CHECK(j["mgf"].size() == 17);
}

TEST_CASE("csv rows") {
  SupremumLaw law{{0.5, 0.25, 0.125}, 0.125};
  std::istringstream in(report::to_csv(law));
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,pmf,cdf,tail_bound");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(report::to_csv(law).find("2,0.125") != std::string::npos);
}
