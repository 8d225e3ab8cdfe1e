#pragma once

#include <cstddef>
#include <optional>

#include "contractlab/family.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

struct OracleResult {
  enum class Method { Grid, ClosedForm };

  Contract best_contract;
  double best_utility = 0.0;
  Method method = Method::Grid;
  double resolution = 0.0;  // grid step (Grid method)
  std::optional<double> closed_form;  // cross-check value when known
  bool closed_form_disagrees = false;
};

// Default exhaustive-search cap, overridable via CONTRACTLAB_GRID_CAP.
std::size_t oracle_grid_cap();

// Exhaustive evaluation of expected_utility over the family's delta-grid.
// Lowest-lexicographic argmax tie-break. Grid chunks evaluate concurrently;
// the reduction merges chunk winners in index order, so results do not depend
// on thread count. When a closed-form optimum is supplied the result records
// it and flags disagreement beyond one grid cell of utility.
OracleResult grid_optimal_contract(const Instance& inst, const ContractFamily& family,
                                   double resolution,
                                   std::optional<double> closed_form = std::nullopt,
                                   std::size_t grid_cap = oracle_grid_cap());

// Oracle value for exactly-known optima.
OracleResult closed_form_oracle(Contract best, double best_utility);

}  // namespace contractlab
