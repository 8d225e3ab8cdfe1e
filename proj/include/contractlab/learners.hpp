#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "contractlab/discretize.hpp"
#include "contractlab/family.hpp"
#include "contractlab/oracle.hpp"
#include "contractlab/trace.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

// Fill the regret columns of a trace: per-round regret is
// max(oracle.best_utility, best arm utility) - u(played arm), computed
// exactly from expected_utility; the cumulative column is the prefix sum.
void annotate_pseudo_regret(RegretTrace& trace, const Instance& inst,
                            const OracleResult& oracle);

struct GeneralLearnerOptions {
  // eps = T^exponent instead of the default T^(-1/(2*d_hat+3)).
  std::optional<double> exponent;
  // Reuse a prebuilt arm set (skips the dimension estimate and S_eps build).
  const DiscretizedContractSet* arms = nullptr;
  // Known optimum over the family; skips the grid oracle for the regret column.
  std::optional<double> known_best_utility;
};

// Spherical-code learner: estimate the intrinsic dimension, discretize with
// S_eps at eps = T^(-1/(2*d_hat+3)), run UCB for T rounds.
RegretTrace run_general_learner(const Instance& inst, const ContractFamily& family,
                                std::size_t T, std::uint64_t seed,
                                const GeneralLearnerOptions& opts = {});

// Linear-contract learner: alpha grid {0, eps, 2 eps, ..., 1} with
// eps = (T / ln T)^(-1/3); arm alpha plays alpha * v.
RegretTrace run_linear_learner(const Instance& inst, std::size_t T,
                               std::uint64_t seed);

// Uniform-grid learner for FOSD instances: grid over the free coordinates
// (f_0 = 0) at eps = (T m^2 / ln T)^(-1/(m+2)), m = outcomes - 1. Refuses
// instances that fail the FOSD check.
RegretTrace run_fosd_learner(const Instance& inst, std::size_t T,
                             std::uint64_t seed);

// Shared core: UCB over a fixed arm list with sampled rewards.
RegretTrace run_ucb_on_arms(const Instance& inst, std::vector<Contract> arms,
                            std::size_t T, std::uint64_t seed,
                            const OracleResult& oracle, std::string learner_name,
                            double eps_meta);

}  // namespace contractlab
