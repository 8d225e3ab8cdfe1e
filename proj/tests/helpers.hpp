#pragma once

#include <vector>

#include "contractlab/instances.hpp"
#include "contractlab/types.hpp"

namespace contractlab::test {

inline Instance uniform_pricing() {
  std::vector<double> costs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  return gen_dynamic_pricing(costs, {});
}

// One type, two outcomes, actions {null, work}; work produces outcome 1
// deterministically at the given cost.
inline Instance two_outcome_worker(double cost) {
  Instance inst;
  inst.name = "worker";
  inst.outcomes.values = {0.0, 1.0};
  AgentType ty;
  ty.weight = 1.0;
  ty.actions.push_back({{1.0, 0.0}, 0.0});
  ty.actions.push_back({{0.0, 1.0}, cost});
  inst.types.push_back(ty);
  return inst;
}

inline Instance null_only_instance() {
  Instance inst;
  inst.name = "null-only";
  inst.outcomes.values = {0.0, 1.0};
  AgentType ty;
  ty.weight = 1.0;
  ty.actions.push_back({{1.0, 0.0}, 0.0});
  inst.types.push_back(ty);
  return inst;
}

}  // namespace contractlab::test
