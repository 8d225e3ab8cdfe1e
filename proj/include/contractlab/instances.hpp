#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "contractlab/types.hpp"

namespace contractlab {

// Axis-aligned box in x-space, x_i = f_i - f_0 per free coordinate.
// Half-open [lo_i, hi_i); hi_i may be +infinity (top cell).
struct RegionBox {
  std::vector<double> lo;
  std::vector<double> hi;

  bool contains(std::span<const double> x) const;
};

struct PerturbedInstance {
  std::vector<std::size_t> l;  // index tuple of the favored action
  Instance instance;
  RegionBox region;                 // contracts whose best response is a(l)
  std::vector<double> optimizer_x;  // optimal x per free coordinate (f_0 = 0)
  double optimum = 0.0;             // closed-form optimal utility
  bool is_sentinel = false;
};

// Hard-instance family: a base instance whose best-response regions tile
// x-space into cells of width eps, plus cost-perturbed variants that enlarge
// one cell per variant and nudge its optimal utility above 1/2.
struct LowerBoundFamily {
  std::size_t m_free = 0;          // free contract coordinates
  double eps = 0.0;                // cell width, < 0.1
  std::size_t actions_per_coord = 0;  // K = floor(1/(2 eps)), k_i in 0..K-1
  std::size_t sentinel_index = 0;     // s = 2*floor(1/(8 eps)) + 2
  bool linear = false;                // two-outcome flavor searched over alpha*v
  Instance base;
  std::vector<PerturbedInstance> perturbed;  // even index tuples
  PerturbedInstance sentinel;

  // Action id for an index tuple: 1 + row-major flattening (null action is 0).
  std::size_t action_id(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> action_tuple(std::size_t action_id) const;
};

// Build the family with production p(k) and cost c(k) from the closed forms,
// cost perturbations applied per coordinate (see the per-coordinate margin
// helpers below). Requires eps < 0.1, floor(1/(8 eps)) >= 1, and the sentinel
// index to exist among the actions.
LowerBoundFamily gen_lower_bound_family(std::size_t m_free, double eps);

// Two-outcome flavor with v = (0, 1); identical cell structure over alpha.
LowerBoundFamily gen_linear_lower_bound_family(double eps);

// Posted-price environment: two outcomes, v = (0, 1), one type per private
// cost with actions {null, sell}. The agent sells iff price >= cost.
Instance gen_dynamic_pricing(std::span<const double> costs,
                             std::span<const double> weights);

Instance gen_random_instance(std::size_t m, std::size_t n_types,
                             std::size_t n_actions, std::uint64_t seed);

// Single-type instance whose actions are totally ordered by first-order
// stochastic dominance, costs increasing with dominance rank.
Instance gen_fosd_instance(std::size_t m, std::size_t n_actions,
                           std::uint64_t seed);

struct FosdReport {
  struct FailingPair {
    std::size_t type_id;
    std::size_t action_a;
    std::size_t action_b;
  };
  std::vector<FailingPair> failures;

  bool ok() const { return failures.empty(); }
};

// Pairwise survival-function dominance for every type and action pair.
FosdReport verify_fosd(const Instance& inst);

struct RegionReport {
  struct Mismatch {
    std::string instance_name;
    Contract contract;
    std::size_t predicted_action;
    std::size_t actual_action;
  };
  std::size_t samples_checked = 0;
  std::size_t skipped = 0;  // near a region boundary or outside the tiling
  std::size_t max_region_overlap = 0;  // boxes containing one sample; must be <= 1
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty() && max_region_overlap <= 1; }
};

// Sample contracts, compare brute-force best response against the closed-form
// per-coordinate region prediction on every instance of the family, and check
// the perturbed boxes are disjoint. Contracts within 1e-9 of a prediction
// boundary are skipped.
RegionReport verify_regions(const LowerBoundFamily& fam, std::size_t n_samples,
                            std::uint64_t seed);

// Closed-form best-response prediction for one family instance (base when
// `which` is null, otherwise the given perturbed/sentinel instance) at
// x-coordinates x. Returns the action id, or SIZE_MAX when x sits within
// `guard` of a prediction boundary.
std::size_t predict_lb_action(const LowerBoundFamily& fam,
                              const PerturbedInstance* which,
                              std::span<const double> x, double guard = 0.0);

}  // namespace contractlab
