#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace contractlab {

// Payment vector over outcomes, one coordinate per outcome id, each in [0,1].
struct Contract {
  std::vector<double> payments;

  Contract() = default;
  explicit Contract(std::vector<double> p) : payments(std::move(p)) {}

  std::size_t size() const { return payments.size(); }
  double operator[](std::size_t o) const { return payments[o]; }
  double& operator[](std::size_t o) { return payments[o]; }
};

// Principal values per outcome. values[0] == 0 (null outcome), non-decreasing.
struct OutcomeModel {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

// One action: outcome distribution plus deterministic cost.
struct ActionSpec {
  std::vector<double> prob;
  double cost = 0.0;
};

// Agent type: arrival weight and ordered action list. actions[0] must be the
// null action (all mass on outcome 0, zero cost).
struct AgentType {
  double weight = 0.0;
  std::vector<ActionSpec> actions;
};

struct Instance {
  std::string name;
  OutcomeModel outcomes;
  std::vector<AgentType> types;

  std::size_t num_outcomes() const { return outcomes.size(); }
};

struct Violation {
  std::string path;
  std::string message;
};

// Tolerances shared across the model: probability normalization at load time
// and the agent-indifference window for best-response ties.
inline constexpr double kProbTol = 1e-9;
inline constexpr double kTieTol = 1e-12;

}  // namespace contractlab
