#pragma once

#include <vector>

#include "contractlab/rng.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

// Every invariant violation, with a JSON-ish path into the instance. An empty
// report means the instance is valid. Violations are data, not failures.
std::vector<Violation> validate_instance(const Instance& inst);

// Expected payment minus cost for one (type, action) pair under contract f.
double agent_payoff(const Instance& inst, std::size_t type_id,
                    std::size_t action_id, const Contract& f);

// Argmax of agent_payoff over the type's actions. Payoffs within kTieTol are
// tied; ties go to the action with the larger principal utility, then to the
// lowest action id. This reproduces the half-open best-response regions of
// the hard-instance families.
std::size_t best_response(const Instance& inst, std::size_t type_id,
                          const Contract& f);

// Exact principal utility: sum over types of weight * E[v_o - f_o] under the
// type's best response. No sampling.
double expected_utility(const Instance& inst, const Contract& f);

struct RoundSample {
  std::size_t type_id = 0;
  std::size_t action_id = 0;
  std::size_t outcome_id = 0;
  double reward = 0.0;  // v_o - f_o, in [-1, 1], unclipped
};

// One simulated round: type ~ weights, agent best-responds, outcome ~ p.
// Deterministic given the rng state.
RoundSample sample_round(const Instance& inst, const Contract& f, Rng& rng);

}  // namespace contractlab
