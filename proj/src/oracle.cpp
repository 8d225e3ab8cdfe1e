#include "contractlab/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "contractlab/model.hpp"

namespace contractlab {

namespace {

struct GridAxis {
  std::size_t count = 0;
  double step = 0.0;

  double value(std::size_t j) const {
    return std::min(static_cast<double>(j) * step, 1.0);
  }
};

struct ChunkBest {
  double utility = -1e300;
  std::size_t flat = 0;
  bool any = false;
};

}  // namespace

std::size_t oracle_grid_cap() {
  if (const char* env = std::getenv("CONTRACTLAB_GRID_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100'000'000;
}

OracleResult grid_optimal_contract(const Instance& inst, const ContractFamily& family,
                                   double resolution, std::optional<double> closed_form,
                                   std::size_t grid_cap) {
  if (!(resolution > 0.0) || !(resolution <= 1.0))
    throw std::invalid_argument("grid_optimal_contract: resolution must be in (0, 1]");

  const std::size_t dim = family.dim();
  const auto per_axis =
      static_cast<std::size_t>(std::ceil(1.0 / resolution - 1e-9)) + 1;
  const std::size_t n_rays =
      family.kind == FamilyKind::RayFamily ? family.rays.size() : 1;

  double total_d = static_cast<double>(n_rays) *
                   std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
  if (total_d > static_cast<double>(grid_cap))
    throw std::runtime_error(
        "grid_optimal_contract: grid of " + std::to_string(total_d) +
        " points exceeds cap " + std::to_string(grid_cap) +
        "; use a coarser resolution or a linear/ray family"
        " (CONTRACTLAB_GRID_CAP overrides the cap)");
  const auto total = static_cast<std::size_t>(total_d);

  GridAxis axis{per_axis, resolution};

  // Decode a flat lexicographic index into a contract.
  auto contract_at = [&](std::size_t flat) {
    switch (family.kind) {
      case FamilyKind::FullCube: {
        std::vector<double> params(dim);
        std::size_t rest = flat;
        for (std::size_t i = dim; i-- > 0;) {
          params[i] = axis.value(rest % per_axis);
          rest /= per_axis;
        }
        return family.embed(params);
      }
      case FamilyKind::Linear: {
        double p[1] = {axis.value(flat)};
        return family.embed(p);
      }
      case FamilyKind::RayFamily: {
        double p[2] = {static_cast<double>(flat / per_axis),
                       axis.value(flat % per_axis)};
        return family.embed(p);
      }
    }
    throw std::logic_error("grid_optimal_contract: unknown family kind");
  };

  auto eval_chunk = [&](std::size_t begin, std::size_t end) {
    ChunkBest best;
    for (std::size_t flat = begin; flat < end; ++flat) {
      Contract f = contract_at(flat);
      if (family.kind == FamilyKind::RayFamily && !family.contains(f)) continue;
      double u = expected_utility(inst, f);
      if (!best.any || u > best.utility) {
        best.utility = u;
        best.flat = flat;
        best.any = true;
      }
    }
    return best;
  };

  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t n_chunks = total > 4096 ? std::min<std::size_t>(hw * 4, 64) : 1;
  const std::size_t chunk = (total + n_chunks - 1) / n_chunks;

  std::vector<std::future<ChunkBest>> futures;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    std::size_t begin = c * chunk;
    std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, eval_chunk, begin, end));
  }

  ChunkBest best;
  for (auto& fut : futures) {
    ChunkBest cb = fut.get();
    if (!cb.any) continue;
    // Strict improvement keeps the lowest flat (lexicographic) index on ties.
    if (!best.any || cb.utility > best.utility) best = cb;
  }
  if (!best.any)
    throw std::runtime_error("grid_optimal_contract: empty grid");

  OracleResult res;
  res.method = OracleResult::Method::Grid;
  res.resolution = resolution;
  res.best_contract = contract_at(best.flat);
  res.best_utility = expected_utility(inst, res.best_contract);
  if (closed_form) {
    res.closed_form = closed_form;
    double cell_tol = 2.0 * static_cast<double>(dim) * resolution + 1e-9;
    res.closed_form_disagrees = std::abs(res.best_utility - *closed_form) > cell_tol;
  }
  return res;
}

OracleResult closed_form_oracle(Contract best, double best_utility) {
  OracleResult res;
  res.method = OracleResult::Method::ClosedForm;
  res.best_contract = std::move(best);
  res.best_utility = best_utility;
  res.closed_form = best_utility;
  return res;
}

}  // namespace contractlab
