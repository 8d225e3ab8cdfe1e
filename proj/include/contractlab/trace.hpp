#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "contractlab/types.hpp"

namespace contractlab {

struct TraceRow {
  std::size_t t = 0;    // 1-based round
  std::size_t arm = 0;  // index into RegretTrace::arms
  std::size_t outcome = 0;
  double reward = 0.0;
  double regret_step = 0.0;
  double regret_cum = 0.0;
};

struct RegretTrace {
  std::vector<TraceRow> rows;
  std::vector<Contract> arms;

  // Run metadata; lives on the struct, not in the CSV.
  std::string learner;
  std::uint64_t seed = 0;
  double eps = 0.0;
  std::size_t horizon = 0;
  double best_utility = 0.0;  // oracle value the regret column is measured against
  std::optional<double> d_hat;
  std::vector<std::string> warnings;

  double final_regret() const { return rows.empty() ? 0.0 : rows.back().regret_cum; }
};

// CSV schema: t,arm,contract,outcome,reward,regret_step,regret_cum with the
// contract column as a semicolon-joined coordinate list. Deterministic
// formatting (%.17g round-trip).
void write_trace_csv(std::ostream& os, const RegretTrace& trace);
std::string trace_to_csv(const RegretTrace& trace);

std::string format_double(double x);

}  // namespace contractlab
