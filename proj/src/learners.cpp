#include "contractlab/learners.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "contractlab/bandit.hpp"
#include "contractlab/instances.hpp"
#include "contractlab/model.hpp"
#include "contractlab/rng.hpp"

namespace contractlab {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& os, const RegretTrace& trace) {
  os << "t,arm,contract,outcome,reward,regret_step,regret_cum\n";
  for (const TraceRow& r : trace.rows) {
    os << r.t << ',' << r.arm << ',';
    const Contract& f = trace.arms[r.arm];
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) os << ';';
      os << format_double(f.payments[i]);
    }
    os << ',' << r.outcome << ',' << format_double(r.reward) << ','
       << format_double(r.regret_step) << ',' << format_double(r.regret_cum)
       << '\n';
  }
}

std::string trace_to_csv(const RegretTrace& trace) {
  std::ostringstream oss;
  write_trace_csv(oss, trace);
  return oss.str();
}

void annotate_pseudo_regret(RegretTrace& trace, const Instance& inst,
                            const OracleResult& oracle) {
  std::vector<double> arm_utility(trace.arms.size());
  double best = oracle.best_utility;
  for (std::size_t a = 0; a < trace.arms.size(); ++a) {
    arm_utility[a] = expected_utility(inst, trace.arms[a]);
    // A delta-grid oracle can undershoot the continuum optimum; the played
    // arms are themselves members of F, so the true optimum dominates both.
    best = std::max(best, arm_utility[a]);
  }
  trace.best_utility = best;
  double cum = 0.0;
  for (TraceRow& r : trace.rows) {
    r.regret_step = best - arm_utility[r.arm];
    cum += r.regret_step;
    r.regret_cum = cum;
  }
}

RegretTrace run_ucb_on_arms(const Instance& inst, std::vector<Contract> arms,
                            std::size_t T, std::uint64_t seed,
                            const OracleResult& oracle, std::string learner_name,
                            double eps_meta) {
  if (T < 1) throw std::invalid_argument("run_ucb_on_arms: T >= 1");
  if (arms.empty()) throw std::invalid_argument("run_ucb_on_arms: no arms");

  RegretTrace trace;
  trace.arms = std::move(arms);
  trace.learner = std::move(learner_name);
  trace.seed = seed;
  trace.eps = eps_meta;
  trace.horizon = T;
  trace.rows.reserve(T);

  Rng rng(seed);
  BanditState state(trace.arms.size(), T);
  for (std::size_t t = 1; t <= T; ++t) {
    std::size_t arm = ucb_select(state);
    RoundSample s = sample_round(inst, trace.arms[arm], rng);
    ucb_update(state, arm, s.reward);
    trace.rows.push_back({t, arm, s.outcome_id, s.reward, 0.0, 0.0});
  }
  annotate_pseudo_regret(trace, inst, oracle);
  return trace;
}

namespace {

double default_oracle_resolution(std::size_t dim) {
  if (dim <= 1) return 1e-4;
  if (dim == 2) return 1e-3;
  if (dim == 3) return 1e-2;
  return 0.05;
}

OracleResult default_oracle(const Instance& inst, const ContractFamily& family,
                            const GeneralLearnerOptions& opts) {
  if (opts.known_best_utility)
    return closed_form_oracle(Contract{}, *opts.known_best_utility);
  return grid_optimal_contract(inst, family, default_oracle_resolution(family.dim()));
}

}  // namespace

RegretTrace run_general_learner(const Instance& inst, const ContractFamily& family,
                                std::size_t T, std::uint64_t seed,
                                const GeneralLearnerOptions& opts) {
  if (T < 1) throw std::invalid_argument("run_general_learner: T >= 1");
  if (family.contract_length() != inst.num_outcomes())
    throw std::invalid_argument("run_general_learner: family/instance dimension mismatch");

  std::vector<std::string> warnings;
  std::optional<double> d_hat;
  double eps;
  const DiscretizedContractSet* arm_set = opts.arms;
  DiscretizedContractSet built;

  if (arm_set) {
    eps = arm_set->eps;
  } else {
    const double eps_grid[] = {0.05, 0.08};
    DimensionEstimate est = estimate_intrinsic_dimension(family, eps_grid);
    d_hat = est.d_hat;
    double exponent = opts.exponent ? *opts.exponent : -1.0 / (2.0 * est.d_hat + 3.0);
    eps = std::pow(static_cast<double>(T), exponent);
    if (eps >= 1.0) {
      // build_S_eps needs eps < 1; the radial grid degenerates to {0, ~1}.
      eps = 1.0 - 1e-9;
      warnings.push_back("eps clamped below 1");
    }
    built = build_S_eps(family, eps);
    arm_set = &built;
  }
  if (eps >= 0.1)
    warnings.push_back("eps=" + std::to_string(eps) +
                       " >= 0.1, outside the intrinsic-dimension definition range");

  RegretTrace trace = run_ucb_on_arms(inst, arm_set->arms, T, seed,
                                      default_oracle(inst, family, opts),
                                      "general", eps);
  trace.d_hat = d_hat;
  trace.warnings = std::move(warnings);
  return trace;
}

RegretTrace run_linear_learner(const Instance& inst, std::size_t T,
                               std::uint64_t seed) {
  if (T < 2) throw std::invalid_argument("run_linear_learner: T >= 2");
  const double eps = std::pow(static_cast<double>(T) / std::log(static_cast<double>(T)),
                              -1.0 / 3.0);

  ContractFamily family = ContractFamily::linear(inst.outcomes.values);
  std::vector<Contract> arms;
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / eps + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) {
    double alpha[1] = {std::min(static_cast<double>(k) * eps, 1.0)};
    arms.push_back(family.embed(alpha));
  }
  // Clamp the grid to include the endpoint alpha = 1.
  if (static_cast<double>(steps) * eps < 1.0 - 1e-12) {
    double one[1] = {1.0};
    arms.push_back(family.embed(one));
  }

  GeneralLearnerOptions opts;
  OracleResult oracle = default_oracle(inst, family, opts);
  return run_ucb_on_arms(inst, std::move(arms), T, seed, oracle, "linear", eps);
}

RegretTrace run_fosd_learner(const Instance& inst, std::size_t T,
                             std::uint64_t seed) {
  if (T < 2) throw std::invalid_argument("run_fosd_learner: T >= 2");
  FosdReport fosd = verify_fosd(inst);
  if (!fosd.ok()) {
    const auto& p = fosd.failures.front();
    throw std::runtime_error(
        "run_fosd_learner: instance is not FOSD; type " + std::to_string(p.type_id) +
        " actions " + std::to_string(p.action_a) + " and " + std::to_string(p.action_b) +
        " have crossing survival functions");
  }

  const std::size_t m_free = inst.num_outcomes() - 1;
  const double md = static_cast<double>(m_free);
  double eps = std::pow(static_cast<double>(T) * md * md / std::log(static_cast<double>(T)),
                        -1.0 / (md + 2.0));
  eps = std::min(eps, 1.0);

  ContractFamily family = ContractFamily::free_cube(inst.outcomes.values);
  DiscretizedContractSet grid = uniform_grid(m_free, eps);
  std::vector<Contract> arms;
  arms.reserve(grid.arms.size());
  for (const Contract& g : grid.arms) arms.push_back(family.embed(g.payments));

  GeneralLearnerOptions opts;
  OracleResult oracle = default_oracle(inst, family, opts);
  return run_ucb_on_arms(inst, std::move(arms), T, seed, oracle, "fosd", eps);
}

}  // namespace contractlab
