#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "contractlab/types.hpp"

namespace contractlab {

enum class LearnerKind { General, Linear, Fosd };

LearnerKind learner_kind_from_name(const std::string& name);

struct SweepRow {
  std::size_t horizon = 0;
  std::uint64_t seed = 0;
  double final_regret = 0.0;
  double wall_ms = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double stderr_ = 0.0;
  std::vector<std::string> warnings;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SlopeFit fit;
};

// Least-squares slope of ln(mean final regret) against ln T, means taken per
// horizon across reps. Horizons with non-positive mean regret are excluded
// with a warning; at least two usable horizons are required.
SlopeFit estimate_slope(std::span<const SweepRow> rows);

// Run reps x horizons learner runs (rep seeds = seed + rep), concurrently,
// results in deterministic (T, rep) order.
SweepResult run_sweep(LearnerKind learner, const Instance& inst,
                      std::span<const std::size_t> horizons, std::size_t reps,
                      std::uint64_t seed);

// CSV schema: T,seed,final_regret,wall_ms.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

}  // namespace contractlab
