// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Budgets and tolerances are pinned in code.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "contractlab/bandit.hpp"
#include "contractlab/discretize.hpp"
#include "contractlab/family.hpp"
#include "contractlab/instances.hpp"
#include "contractlab/io.hpp"
#include "contractlab/learners.hpp"
#include "contractlab/model.hpp"
#include "contractlab/oracle.hpp"
#include "contractlab/sweep.hpp"
#include "contractlab/verify.hpp"

using namespace contractlab;
namespace fs = std::filesystem;

namespace {

struct Suite {
  int failures = 0;

  void run(int id, const std::string& name, double budget_s,
           const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0.0 && elapsed > budget_s) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                std::to_string(budget_s) + "s";
    }
    std::printf("[%s] %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

constexpr double kTol = 1e-9;

// ---- 1. Hard-family payoff identity ----------------------------------------
bool criterion1(std::string& detail) {
  for (std::size_t m_free : {1, 2, 3}) {
    for (double eps : {0.05, 0.1}) {
      LowerBoundFamily fam = gen_lower_bound_family(m_free, eps);
      const std::size_t K = fam.actions_per_coord;
      std::size_t tuples = 1;
      for (std::size_t i = 0; i < m_free; ++i) tuples *= K;
      for (std::size_t flat = 0; flat < tuples; ++flat) {
        Contract f;
        f.payments.assign(m_free + 1, 0.0);
        std::size_t rest = flat;
        for (std::size_t i = m_free; i-- > 0;) {
          f.payments[i + 1] = static_cast<double>(rest % K) * eps;
          rest /= K;
        }
        double u = expected_utility(fam.base, f);
        if (std::abs(u - 0.5) > kTol) {
          detail = "m=" + std::to_string(m_free) + " eps=" + std::to_string(eps) +
                   " u=" + std::to_string(u);
          return false;
        }
      }
    }
  }
  return true;
}

// ---- 2. Hard-family perturbed optima ----------------------------------------
bool criterion2(std::string& detail) {
  for (std::size_t m_free : {1, 2}) {
    for (double eps : {0.05, 0.1}) {
      LowerBoundFamily fam = gen_lower_bound_family(m_free, eps);
      ContractFamily cube = ContractFamily::free_cube(fam.base.outcomes.values);
      const double delta = eps / 100.0;

      for (const PerturbedInstance& p : fam.perturbed) {
        OracleResult res = grid_optimal_contract(p.instance, cube, delta, p.optimum);
        if (res.best_utility < 0.5 + eps / 20.0 - kTol) {
          detail = p.instance.name + " grid optimum " + std::to_string(res.best_utility) +
                   " < 1/2 + eps/20";
          return false;
        }
        std::vector<double> x(m_free);
        for (std::size_t i = 0; i < m_free; ++i)
          x[i] = res.best_contract.payments[i + 1] - res.best_contract.payments[0];
        if (!p.region.contains(x)) {
          detail = p.instance.name + " optimizer outside C_l";
          return false;
        }
        if (res.closed_form_disagrees) {
          detail = p.instance.name + " grid disagrees with the closed form";
          return false;
        }
      }

      OracleResult sres =
          grid_optimal_contract(fam.sentinel.instance, cube, delta, fam.sentinel.optimum);
      if (sres.best_utility < 0.5 + eps / 30.0 - kTol ||
          sres.best_utility > 0.5 + eps / 25.0 + kTol) {
        detail = fam.sentinel.instance.name + " optimum " +
                 std::to_string(sres.best_utility) + " outside [1/2+eps/30, 1/2+eps/25]";
        return false;
      }
    }
  }
  return true;
}

// ---- 3. Region verification -------------------------------------------------
bool criterion3(std::string& detail) {
  std::uint64_t seed = 1000;
  for (std::size_t m_free : {1, 2}) {
    for (double eps : {0.05, 0.1}) {
      LowerBoundFamily fam = gen_lower_bound_family(m_free, eps);
      RegionReport report = verify_regions(fam, 10'000, seed++);
      if (!report.mismatches.empty()) {
        const auto& mm = report.mismatches.front();
        detail = mm.instance_name + ": predicted " + std::to_string(mm.predicted_action) +
                 " got " + std::to_string(mm.actual_action) + " (" +
                 std::to_string(report.mismatches.size()) + " mismatches)";
        return false;
      }
      if (report.max_region_overlap > 1) {
        detail = "perturbed regions overlap";
        return false;
      }
    }
  }
  return true;
}

// ---- 4-6. Lemma suites -------------------------------------------------------
bool run_suite_criterion(const char* suite, std::size_t samples, std::string& detail) {
  SuiteReport report = run_verify_suite(suite, samples, 424242);
  if (!report.ok()) {
    detail = std::to_string(report.violations.size()) + " violations; first: " +
             report.violations.front();
    return false;
  }
  detail = std::to_string(report.checked) + " checks";
  return true;
}

// ---- 7. Linear-contract rate -------------------------------------------------
bool criterion7(std::string& detail) {
  std::vector<double> costs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  Instance pricing = gen_dynamic_pricing(costs, {});
  const std::size_t horizons[] = {1'000, 10'000, 100'000};
  SweepResult sweep = run_sweep(LearnerKind::Linear, pricing, horizons, 10, 7);
  detail = "slope " + std::to_string(sweep.fit.slope) + " +- " +
           std::to_string(sweep.fit.stderr_);
  return sweep.fit.slope >= 0.55 && sweep.fit.slope <= 0.80;
}

// ---- 8. General-learner sublinearity ----------------------------------------
bool criterion8(std::string& detail) {
  LowerBoundFamily fam = gen_lower_bound_family(2, 0.1);
  const PerturbedInstance& p = fam.perturbed.front();
  ContractFamily cube = ContractFamily::full_cube(p.instance.outcomes.values);

  const double eps_grid[] = {0.05, 0.08};
  DimensionEstimate est = estimate_intrinsic_dimension(cube, eps_grid);

  auto mean_ratio = [&](std::size_t T) {
    double eps = std::pow(static_cast<double>(T), -1.0 / (2.0 * est.d_hat + 3.0));
    eps = std::min(eps, 1.0 - 1e-9);
    DiscretizedContractSet arms = build_S_eps(cube, eps);
    GeneralLearnerOptions opts;
    opts.arms = &arms;
    opts.known_best_utility = p.optimum;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      RegretTrace trace = run_general_learner(p.instance, cube, T, seed, opts);
      total += trace.final_regret() / static_cast<double>(T);
    }
    return total / 5.0;
  };

  double r_small = mean_ratio(1'000);
  double r_large = mean_ratio(100'000);
  detail = "R_T/T: " + std::to_string(r_small) + " at 1e3 vs " +
           std::to_string(r_large) + " at 1e5 (d_hat " + std::to_string(est.d_hat) + ")";
  return r_large < 0.5 * r_small;
}

// ---- 9. Discretization -------------------------------------------------------
bool criterion9(std::string& detail) {
  // Linear family: one direction at every eps, intrinsic dimension 0.
  ContractFamily lin = ContractFamily::linear({0.0, 1.0, 1.0});
  for (double eps : {0.05, 0.1, 0.2, 0.3}) {
    DirectionCode code = build_direction_cover(lin, eps);
    if (code.size() != 1) {
      detail = "linear code size " + std::to_string(code.size()) + " at eps " +
               std::to_string(eps);
      return false;
    }
  }
  const double eps_list[] = {0.05, 0.08};
  if (estimate_intrinsic_dimension(lin, eps_list).d_hat != 0.0) {
    detail = "linear d_hat != 0";
    return false;
  }

  // Full-cube covers: fresh-sample soundness with zero violations.
  for (std::size_t m : {2, 3}) {
    std::vector<double> v(m, 1.0);
    v[0] = 0.0;
    ContractFamily cube = ContractFamily::full_cube(v);
    for (double eps : {0.3, 0.2}) {
      DirectionCode code = build_direction_cover(cube, eps);
      CoveringCheck check = verify_covering(cube, code, 10'000, 99);
      if (check.violations != 0) {
        detail = "m=" + std::to_string(m) + " eps=" + std::to_string(eps) + ": " +
                 std::to_string(check.violations) + " uncovered fresh samples";
        return false;
      }
    }
  }
  return true;
}

// ---- 10. UCB sanity ------------------------------------------------------------
bool criterion10(std::string& detail) {
  const std::size_t T = 100;
  BanditState state(2, T);
  std::size_t subopt = 0;
  for (std::size_t t = 1; t <= T; ++t) {
    std::size_t arm = ucb_select(state);
    ucb_update(state, arm, arm == 0 ? 1.0 : -1.0);  // mapped rewards 1 / 0
    if (arm == 1) ++subopt;
    if (state.pulls[0] + state.pulls[1] != t) {
      detail = "pull counts diverge from the round counter";
      return false;
    }
  }
  detail = "suboptimal pulls " + std::to_string(subopt);
  return subopt <= 11;
}

// ---- 11. CLI determinism -------------------------------------------------------
bool criterion11(std::string& detail) {
#ifndef CONTRACTLAB_CLI_PATH
  detail = "CLI path not configured";
  return false;
#else
  const std::string cli = CONTRACTLAB_CLI_PATH;
  fs::path dir = fs::temp_directory_path() / "contractlab_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  auto shell = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  struct Step {
    std::string name;
    std::string args_fmt;  // %OUT% replaced per invocation
  };
  fs::path pricing = dir / "pricing.json";
  if (!shell("gen --family pricing --out " + pricing.string())) {
    detail = "gen pricing failed";
    return false;
  }

  const Step steps[] = {
      {"gen", "gen --family lower-bound --m 1 --eps 0.1 --seed 3 --out %OUT%"},
      {"run", "run --learner linear --instance " + pricing.string() +
                  " --T 2000 --seed 7 --out %OUT%"},
      {"cover", "cover --family full-cube --m 2 --eps 0.3 --out %OUT%"},
  };
  for (const Step& step : steps) {
    // Same file name under two directories: family manifests embed sibling
    // file names derived from the output stem.
    fs::path out_a = dir / "a" / (step.name + ".out");
    fs::path out_b = dir / "b" / (step.name + ".out");
    for (const fs::path& out : {out_a, out_b}) {
      fs::create_directories(out.parent_path());
      std::string args = step.args_fmt;
      args.replace(args.find("%OUT%"), 5, out.string());
      if (!shell(args)) {
        detail = step.name + " invocation failed";
        return false;
      }
    }
    if (slurp(out_a) != slurp(out_b) || slurp(out_a).empty()) {
      detail = step.name + " outputs differ between identical invocations";
      return false;
    }
  }

  // Trace row count equals the horizon.
  std::ifstream trace(dir / "a" / "run.out");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(trace, line)) ++lines;
  if (lines != 2001) {  // header + T rows
    detail = "trace has " + std::to_string(lines) + " lines, expected 2001";
    return false;
  }

  // The remaining subcommands at least run clean.
  if (!shell("verify --suite payoffs --samples 4 --seed 1")) {
    detail = "verify subcommand failed";
    return false;
  }
  if (!shell("sweep --learner linear --family pricing --T 300,600 --reps 2 --seed 1"
             " --out " + (dir / "sweep.csv").string())) {
    detail = "sweep subcommand failed";
    return false;
  }
  fs::remove_all(dir);
  return true;
#endif
}

}  // namespace

int main() {
  Suite suite;
  suite.run(1, "hard-family payoff identity u = 1/2 at cell corners", 1.0, criterion1);
  suite.run(2, "perturbed optima via grid oracle at delta = eps/100", 30.0, criterion2);
  suite.run(3, "best-response regions match closed forms on 1e4 samples", 10.0,
            criterion3);
  suite.run(4, "continuity lemma over 1e3 random instances", 30.0,
            [](std::string& d) { return run_suite_criterion("continuity", 1000, d); });
  suite.run(5, "best-response geometry inequality", 30.0,
            [](std::string& d) { return run_suite_criterion("geometry", 1000, d); });
  suite.run(6, "linear-contract lemmas (monotone ratio, right continuity)", 30.0,
            [](std::string& d) { return run_suite_criterion("linear-monotone", 100, d); });
  suite.run(7, "linear learner regret slope in [0.55, 0.80]", 120.0, criterion7);
  suite.run(8, "general learner: R_T/T halves from T=1e3 to T=1e5", 300.0, criterion8);
  suite.run(9, "discretization: one-direction linear code, sound cube covers", 60.0,
            criterion9);
  suite.run(10, "UCB sanity: suboptimal pulls <= 11, exact pull bookkeeping", 5.0,
            criterion10);
  suite.run(11, "CLI determinism: byte-identical outputs on three subcommands", 60.0,
            criterion11);

  if (suite.failures) {
    std::printf("%d criterion(s) failed\n", suite.failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
