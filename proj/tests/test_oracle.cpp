#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdlib>

#include "contractlab/instances.hpp"
#include "contractlab/learners.hpp"
#include "contractlab/model.hpp"
#include "contractlab/oracle.hpp"
#include "contractlab/rng.hpp"
#include "helpers.hpp"

using namespace contractlab;

TEST_CASE("linear grid oracle finds the pricing optimum") {
  Instance inst = test::uniform_pricing();
  ContractFamily fam = ContractFamily::linear(inst.outcomes.values);
  OracleResult res = grid_optimal_contract(inst, fam, 1e-4);
  CHECK(res.best_utility == doctest::Approx(5.0 / 18.0).epsilon(1e-9));
  CHECK(res.best_contract.payments[1] == doctest::Approx(0.5).epsilon(1e-9));
  // Self-consistency: the stored utility is exactly the recomputed one.
  CHECK(res.best_utility == expected_utility(inst, res.best_contract));
}

TEST_CASE("grid oracle hits 1/2 on the base hard instance") {
  LowerBoundFamily fam = gen_lower_bound_family(1, 0.1);
  ContractFamily cube = ContractFamily::free_cube(fam.base.outcomes.values);
  OracleResult res = grid_optimal_contract(fam.base, cube, 0.001, 0.5);
  CHECK(res.best_utility == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(!res.closed_form_disagrees);
}

TEST_CASE("grid oracle finds the perturbed linear optimum inside C_2") {
  LowerBoundFamily fam = gen_linear_lower_bound_family(0.1);
  const PerturbedInstance& p = fam.perturbed[0];
  ContractFamily lin = ContractFamily::linear(p.instance.outcomes.values);
  OracleResult res = grid_optimal_contract(p.instance, lin, 5e-4, p.optimum);
  CHECK(res.best_utility >= 0.505 - 5e-4);
  CHECK(!res.closed_form_disagrees);
  double x[] = {res.best_contract.payments[1] - res.best_contract.payments[0]};
  CHECK(p.region.contains(x));
}

TEST_CASE("oracle dominance over random contracts") {
  Instance inst = gen_random_instance(2, 2, 4, 77);
  ContractFamily cube = ContractFamily::full_cube(inst.outcomes.values);
  const double delta = 0.002;
  OracleResult res = grid_optimal_contract(inst, cube, delta);
  const double guard = 2.0 * (std::sqrt(2.0) * delta + delta);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    Contract f = cube.sample(rng);
    CHECK(expected_utility(inst, f) <= res.best_utility + guard);
  }
}

TEST_CASE("grid cap enforced and overridable via environment") {
  Instance inst = test::uniform_pricing();
  ContractFamily cube = ContractFamily::full_cube(inst.outcomes.values);
  CHECK_THROWS_AS(grid_optimal_contract(inst, cube, 1e-4, std::nullopt, 1'000'000),
                  std::runtime_error);

  setenv("CONTRACTLAB_GRID_CAP", "4000000", 1);
  CHECK(oracle_grid_cap() == 4'000'000);
  unsetenv("CONTRACTLAB_GRID_CAP");
  CHECK(oracle_grid_cap() == 100'000'000);
}

TEST_CASE("pseudo-regret annotation") {
  Instance inst = test::two_outcome_worker(0.2);
  ContractFamily lin = ContractFamily::linear(inst.outcomes.values);
  OracleResult oracle = grid_optimal_contract(inst, lin, 1e-4);

  RegretTrace trace;
  trace.arms = {oracle.best_contract, Contract{{1.0, 1.0}}};
  trace.rows = {{1, 0, 1, 0.0, 0.0, 0.0},
                {2, 1, 1, 0.0, 0.0, 0.0},
                {3, 0, 1, 0.0, 0.0, 0.0}};
  annotate_pseudo_regret(trace, inst, oracle);

  // Playing the oracle's contract accrues zero regret.
  CHECK(trace.rows[0].regret_step == doctest::Approx(0.0).epsilon(1e-12));
  // The all-ones contract: u = E[v_o - 1] <= 0.
  double u_ones = expected_utility(inst, Contract{{1.0, 1.0}});
  CHECK(u_ones <= 0.0);
  CHECK(trace.rows[1].regret_step ==
        doctest::Approx(trace.best_utility - u_ones).epsilon(1e-12));
  // Cumulative column is the prefix sum and non-decreasing.
  CHECK(trace.rows[0].regret_cum == trace.rows[0].regret_step);
  CHECK(trace.rows[2].regret_cum ==
        doctest::Approx(trace.rows[0].regret_step + trace.rows[1].regret_step +
                        trace.rows[2].regret_step)
            .epsilon(1e-12));
  for (std::size_t i = 1; i < trace.rows.size(); ++i)
    CHECK(trace.rows[i].regret_cum >= trace.rows[i - 1].regret_cum);
}

TEST_CASE("single-row trace: cumulative equals the step") {
  Instance inst = test::two_outcome_worker(0.2);
  OracleResult oracle = closed_form_oracle(Contract{{0.0, 0.2}}, 0.8);
  RegretTrace trace;
  trace.arms = {Contract{{0.0, 0.5}}};
  trace.rows = {{1, 0, 1, 0.5, 0.0, 0.0}};
  annotate_pseudo_regret(trace, inst, oracle);
  CHECK(trace.rows[0].regret_cum == trace.rows[0].regret_step);
}
