#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "contractlab/family.hpp"
#include "contractlab/types.hpp"

namespace contractlab {

// Greedy direction cover: unit vectors such that every candidate direction
// f - v (f in the family) is within `angle` radians of some stored vector.
// The greedy construction is simultaneously an angle-packing: stored vectors
// are pairwise separated by more than `angle`.
struct DirectionCode {
  std::vector<std::vector<double>> directions;
  double angle = 0.0;
  std::size_t candidate_density = 0;  // grid points per axis actually used

  std::size_t size() const { return directions.size(); }
};

// candidate_density 0 selects the default max(20, ceil(4/angle)) points per
// axis, clamped so the candidate grid stays below ~4e6 points.
DirectionCode build_direction_cover(const ContractFamily& family, double angle,
                                    std::size_t candidate_density = 0);

struct DiscretizedContractSet {
  std::vector<Contract> arms;
  double eps = 0.0;
  DirectionCode code;
  std::string provenance;

  std::size_t size() const { return arms.size(); }
};

// Two-step discretization: directions from the cover at angle eps^2, radial
// grid beta in {0, eps, ..., floor(1/eps)*eps}, arms = v + sqrt(m)*beta*gamma
// intersected with the family. Deterministic order: direction index, then
// beta, duplicates dropped.
DiscretizedContractSet build_S_eps(const ContractFamily& family, double eps);

inline constexpr std::size_t kDefaultGridArmCap = 10'000'000;

// Plain product grid {0, eps, 2eps, ..., <=1}^m in lexicographic order.
DiscretizedContractSet uniform_grid(std::size_t m, double eps,
                                    std::size_t cap = kDefaultGridArmCap);

struct DimensionEstimate {
  std::vector<std::pair<double, std::size_t>> cover_sizes;  // (eps, N-hat)
  double d_hat = 0.0;
};

// d-hat = max over eps of log N(F, eps) / log(1/eps), N from the greedy cover.
// All eps must lie in (0, 0.1).
DimensionEstimate estimate_intrinsic_dimension(const ContractFamily& family,
                                               std::span<const double> eps_list,
                                               std::size_t candidate_density = 0);

struct CoveringCheck {
  std::size_t checked = 0;
  std::size_t skipped_near_anchor = 0;
  std::size_t violations = 0;
  double slack = 0.0;  // 2 * candidate-grid angular resolution, radians
};

// Covering soundness on fresh samples: for random f in F with ||f - v|| not
// too small, some code direction is within code.angle + slack of f - v.
CoveringCheck verify_covering(const ContractFamily& family,
                              const DirectionCode& code, std::size_t n_samples,
                              std::uint64_t seed);

}  // namespace contractlab
