// kpwalk: supremum laws of negative-drift integer random walks.
//
// Exit codes: 0 success, 1 input error, 2 validation failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kpwalk/dist.hpp"
#include "kpwalk/errors.hpp"
#include "kpwalk/kp_left.hpp"
#include "kpwalk/kp_right.hpp"
#include "kpwalk/ladder.hpp"
#include "kpwalk/report.hpp"
#include "kpwalk/sim.hpp"
#include "kpwalk/tandem.hpp"

using namespace kpwalk;
using report::json;

namespace {

constexpr double kAtomSumTol = 1e-9;
constexpr double kLindleyTol = 1e-13;
constexpr double kSigmas = 4.0;
constexpr double kMinExpected = 100.0;

struct Inputs {
  std::optional<double> xi;
  std::optional<double> r;
  std::vector<std::string> atoms;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  int K = 128;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::uint64_t n_cycles = 1000000;
  std::uint64_t n_paths = 100000;
  long n_steps = 1024;
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw InputError("malformed number '" + text + "' in " + what);
  }
  return v;
}

std::map<long, double> parse_atoms(const std::vector<std::string>& specs) {
  std::map<long, double> atoms;
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("atom '" + spec + "' is not of the form x:prob");
    const double x = parse_number(spec.substr(0, colon), "atom position");
    if (x != std::floor(x)) throw InputError("atom position '" + spec.substr(0, colon) + "' is not an integer");
    const double p = parse_number(spec.substr(colon + 1), "atom probability");
    if (!(p > 0.0 && p < 1.0)) throw InputError("atom probability in '" + spec + "' is not in (0, 1)");
    atoms[static_cast<long>(x)] += p;
  }
  return atoms;
}

bool wants_tandem(const Inputs& in) { return in.alpha || in.beta || in.gamma; }

tandem::TandemParams tandem_params(const Inputs& in) {
  if (!in.alpha || !in.beta || !in.gamma) throw InputError("tandem needs --alpha, --beta and --gamma");
  return tandem::TandemParams::make(*in.alpha, *in.beta, *in.gamma);
}

// Decimal input rarely sums to one exactly: accept within kAtomSumTol, then
// rescale the atoms so the law is exact.
StepDistribution step_law(const Inputs& in, std::optional<TailSide> side) {
  if (!in.xi || !in.r) throw InputError("a step law needs --xi and --r");
  if (in.atoms.empty()) throw InputError("a step law needs at least one --atom x:prob");
  auto atoms = parse_atoms(in.atoms);
  const double xi = *in.xi;
  if (!(xi > 0.0 && xi < 1.0)) throw InputError("--xi must lie in (0, 1)");
  double sum = 0.0;
  for (const auto& [x, p] : atoms) sum += p;
  if (std::abs(sum + xi - 1.0) > kAtomSumTol) {
    std::ostringstream msg;
    msg << "atom probabilities plus xi sum to " << sum + xi << ", expected 1 within " << kAtomSumTol;
    throw InputError(msg.str());
  }
  for (auto& [x, p] : atoms) p *= (1.0 - xi) / sum;
  if (!side) side = atoms.begin()->first < 0 ? TailSide::Right : TailSide::Left;
  if (*side == TailSide::Right) return step_from_right_tail(xi, *in.r, atoms);
  return step_from_left_tail(xi, *in.r, IntegerPMF::from_atoms(atoms));
}

json with_provenance(json params, const Inputs& in) {
  params["K"] = in.K;
  params["tol"] = in.tol;
  params["seed"] = in.seed;
  return params;
}

struct OracleCheck {
  double tv = 0.0;
  double supnorm = 0.0;
  long sweeps = 0;
};

OracleCheck lindley_check(const StepDistribution& step, const SupremumLaw& law) {
  OracleCheck out;
  const long window = std::max(law.max_x(), sim::lindley_window(step, 1e-12));
  const auto lindley = sim::lindley_fixed_point(step, window, kLindleyTol, 1000000, &out.sweeps);
  out.tv = tv_distance(law, lindley);
  out.supnorm = survival_sup_norm(law, lindley, law.max_x());
  return out;
}

struct Analysis {
  json params;
  json solution;
  SupremumLaw law;
  StepDistribution step;
  std::optional<double> ladder_p;
  double ladder_p_bound = 0.0;
  double p = 0.0;
};

Analysis analyze_right(const Inputs& in) {
  const auto step = step_law(in, TailSide::Right);
  const auto sol = right::solve(step);
  const auto dp = ladder::ladder_dp(step);
  return {report::step_params(step), report::right_solution(sol), right::sup_law(sol, in.K), step,
          dp.p, dp.p_bound, sol.p};
}

left::SolveOptions left_options(const Inputs& in) {
  left::SolveOptions opts;
  opts.route_tol = in.tol;
  return opts;
}

Analysis analyze_left(const Inputs& in) {
  const auto step = step_law(in, TailSide::Left);
  const auto sol = left::solve(step, in.K, left_options(in));
  auto solution = report::left_solution(sol);
  solution["psi_terms"] = sol.psi_terms;
  return {report::step_params(step), solution, sol.sup, step, sol.dp.p, sol.dp.p_bound, sol.p};
}

Analysis analyze_tandem(const Inputs& in) {
  const auto params = tandem_params(in);
  params.require_stable();
  const auto rep = tandem::analyze(params, in.K, left_options(in));
  auto solution = report::left_solution(rep.solution);
  solution["xi"] = rep.xi;
  solution["simplified_route_gap"] = rep.route_gap;
  solution["tail_deviation"] = rep.tail_deviation;
  auto p = report::tandem_params(params);
  p["step"] = report::step_params(rep.step);
  return {p, solution, rep.solution.sup, rep.step, rep.solution.dp.p, rep.solution.dp.p_bound, rep.solution.p};
}

Analysis analyze_any(const Inputs& in) {
  if (wants_tandem(in)) return analyze_tandem(in);
  const auto step = step_law(in, std::nullopt);
  return step.side() == TailSide::Right ? analyze_right(in) : analyze_left(in);
}

void emit(const Inputs& in, const std::string& text) {
  if (in.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(in.output);
  if (!file) throw InputError("cannot open output file '" + in.output + "'");
  file << text;
}

std::string render(const Inputs& in, const json& doc, const SupremumLaw& law) {
  return in.format == "csv" ? report::to_csv(law) : doc.dump(2) + "\n";
}

int run_solver(const Inputs& in, Analysis (*analyze)(const Inputs&)) {
  const auto a = analyze(in);
  const auto check = lindley_check(a.step, a.law);
  report::Diagnostics diag;
  diag.oracle_tv = check.tv;
  diag.oracle_supnorm = check.supnorm;
  diag.iterations = check.sweeps;
  const auto doc = report::document(with_provenance(a.params, in), a.solution, a.law, diag);
  emit(in, render(in, doc, a.law));
  return 0;
}

SupremumLaw empirical_law(const sim::Histogram& h, std::uint64_t n) {
  return {sim::frequencies(h, n), 0.0};
}

int run_simulate(const Inputs& in) {
  json params;
  sim::SimReport rep;
  std::optional<SupremumLaw> analytic;
  if (wants_tandem(in)) {
    const auto p = tandem_params(in);
    params = report::tandem_params(p);
    rep = sim::simulate_tandem(p, in.n_cycles, in.seed, in.threads);
    if (!rep.unstable) analytic = left::solve(tandem::build_step(p), in.K, left_options(in)).sup;
  } else {
    const auto step = step_law(in, std::nullopt);
    params = report::step_params(step);
    rep = sim::mc_sup(step, in.n_paths, in.n_steps, in.seed, in.threads);
    analytic = step.side() == TailSide::Right ? right::sup_law(right::solve(step), in.K)
                                              : left::solve(step, in.K, left_options(in)).sup;
  }
  const auto law = empirical_law(rep.histogram, rep.n_samples);
  report::Diagnostics diag;
  if (analytic) {
    diag.oracle_tv = tv_distance(law, *analytic);
    diag.oracle_supnorm = survival_sup_norm(law, *analytic, std::min(law.max_x(), analytic->max_x()));
  }
  diag.iterations = static_cast<long>(rep.n_samples);
  params["n_cycles"] = in.n_cycles;
  params["n_paths"] = in.n_paths;
  const auto doc = report::document(with_provenance(params, in), report::sim_report(rep), law, diag);
  emit(in, render(in, doc, law));
  return 0;
}

// Largest standardized gap between Monte Carlo frequencies and the analytic
// law over bins with enough expected count.
double max_z_score(const sim::SimReport& rep, const SupremumLaw& law) {
  const double n = static_cast<double>(rep.n_samples);
  const auto freq = sim::frequencies(rep.histogram, rep.n_samples);
  double worst = 0.0;
  for (long x = 0; x <= law.max_x(); ++x) {
    const double p = law.pmf[static_cast<std::size_t>(x)];
    if (p * n < kMinExpected) continue;
    const double got = x < static_cast<long>(freq.size()) ? freq[static_cast<std::size_t>(x)] : 0.0;
    worst = std::max(worst, std::abs(got - p) / std::sqrt(p * (1.0 - p) / n));
  }
  return worst;
}

int run_verify(const Inputs& in) {
  const auto a = analyze_any(in);
  const auto lindley = lindley_check(a.step, a.law);
  const auto mc = sim::mc_sup(a.step, in.n_paths, in.n_steps, in.seed, in.threads);
  const double z = max_z_score(mc, a.law);

  json checks = json::array();
  bool all_pass = true;
  auto add = [&](const std::string& name, double value, double tolerance) {
    const bool pass = value <= tolerance;
    all_pass = all_pass && pass;
    checks.push_back({{"check", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  };
  add("lindley_tv", lindley.tv, in.tol);
  add("lindley_supnorm", lindley.supnorm, in.tol);
  if (a.ladder_p) add("ladder_p_gap", std::abs(a.p - *a.ladder_p), std::max(in.tol, a.ladder_p_bound));
  add("monte_carlo_max_z", z, kSigmas);

  report::Diagnostics diag;
  diag.oracle_tv = lindley.tv;
  diag.oracle_supnorm = lindley.supnorm;
  diag.iterations = lindley.sweeps;
  diag.extra["checks"] = checks;
  diag.extra["pass"] = all_pass;
  diag.extra["monte_carlo_paths"] = mc.n_samples;
  const auto doc = report::document(with_provenance(a.params, in), a.solution, a.law, diag);
  if (in.format == "csv") {
    std::ostringstream out;
    out << std::setprecision(17) << "check,value,tolerance,pass\n";
    for (const auto& c : checks) {
      out << c["check"].get<std::string>() << ',' << c["value"].get<double>() << ','
          << c["tolerance"].get<double>() << ',' << (c["pass"].get<bool>() ? "true" : "false") << '\n';
    }
    emit(in, out.str());
  } else {
    emit(in, doc.dump(2) + "\n");
  }
  if (!all_pass) {
    std::cerr << "verify: one or more checks failed\n";
    return 2;
  }
  return 0;
}

void add_law_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--xi", in.xi, "tail weight xi in (0, 1)");
  cmd->add_option("--r", in.r, "geometric tail ratio r in (0, 1)");
  cmd->add_option("--atom", in.atoms, "finite atoms as x:prob, comma separated or repeated")->delimiter(',');
}

void add_tandem_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--alpha", in.alpha, "mean inter-arrival time");
  cmd->add_option("--beta", in.beta, "mean server-1 service time");
  cmd->add_option("--gamma", in.gamma, "mean server-2 service time");
}

void add_common_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--K", in.K, "series truncation order")->capture_default_str()->check(CLI::Range(1, 1 << 20));
  cmd->add_option("--tol", in.tol, "agreement tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", in.seed, "random seed")->capture_default_str()->envname("KPWALK_SEED");
  cmd->add_option("--format", in.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", in.output, "write to this file instead of stdout");
  cmd->add_option("--threads", in.threads, "worker threads, 0 for all cores")->capture_default_str();
}

void add_sampling_options(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--n-cycles", in.n_cycles, "tandem cycles to simulate")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--n-paths", in.n_paths, "Monte Carlo walk paths")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--n-steps", in.n_steps, "initial Monte Carlo horizon")->capture_default_str()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supremum laws of negative-drift integer random walks with a geometric tail"};
  app.require_subcommand(1);
  Inputs in;

  auto* right_cmd = app.add_subcommand("right", "geometric right tail: closed-form sup law");
  add_law_options(right_cmd, in);
  add_common_options(right_cmd, in);

  auto* left_cmd = app.add_subcommand("left", "geometric left tail: ladder measure and sup law");
  add_law_options(left_cmd, in);
  add_common_options(left_cmd, in);

  auto* tandem_cmd = app.add_subcommand("tandem", "tandem queue: induced walk and sup law");
  add_tandem_options(tandem_cmd, in);
  add_common_options(tandem_cmd, in);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo: tandem queue or walk maximum");
  add_law_options(sim_cmd, in);
  add_tandem_options(sim_cmd, in);
  add_common_options(sim_cmd, in);
  add_sampling_options(sim_cmd, in);

  auto* verify_cmd = app.add_subcommand("verify", "analytic law against the Lindley and Monte Carlo oracles");
  add_law_options(verify_cmd, in);
  add_tandem_options(verify_cmd, in);
  add_common_options(verify_cmd, in);
  add_sampling_options(verify_cmd, in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (right_cmd->parsed()) return run_solver(in, analyze_right);
    if (left_cmd->parsed()) return run_solver(in, analyze_left);
    if (tandem_cmd->parsed()) return run_solver(in, analyze_tandem);
    if (sim_cmd->parsed()) return run_simulate(in);
    if (verify_cmd->parsed()) return run_verify(in);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
