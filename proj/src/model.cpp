#include "contractlab/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace contractlab {

namespace {

std::string type_path(std::size_t i) { return "types[" + std::to_string(i) + "]"; }

std::string action_path(std::size_t i, std::size_t a) {
  return type_path(i) + ".actions[" + std::to_string(a) + "]";
}

// Principal-side value of a (type, action) pair, used only for tie-breaking.
double principal_value(const Instance& inst, std::size_t type_id,
                       std::size_t action_id, const Contract& f) {
  const ActionSpec& act = inst.types[type_id].actions[action_id];
  double u = 0.0;
  for (std::size_t o = 0; o < act.prob.size(); ++o)
    u += act.prob[o] * (inst.outcomes.values[o] - f.payments[o]);
  return u;
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const std::size_t m = inst.num_outcomes();

  if (m == 0) {
    out.push_back({"values", "instance has no outcomes"});
    return out;
  }
  if (inst.outcomes.values[0] != 0.0)
    out.push_back({"values[0]", "null outcome must have value 0"});
  for (std::size_t o = 0; o < m; ++o) {
    double v = inst.outcomes.values[o];
    if (v < 0.0 || v > 1.0)
      out.push_back({"values[" + std::to_string(o) + "]", "value outside [0,1]"});
    if (o > 0 && v < inst.outcomes.values[o - 1])
      out.push_back({"values[" + std::to_string(o) + "]",
                     "values must be non-decreasing in outcome index"});
  }

  if (inst.types.empty()) out.push_back({"types", "instance has no agent types"});

  double weight_sum = 0.0;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    const AgentType& ty = inst.types[i];
    weight_sum += ty.weight;
    if (ty.weight < 0.0)
      out.push_back({type_path(i) + ".weight", "weight must be >= 0"});
    if (ty.actions.empty()) {
      out.push_back({type_path(i) + ".actions", "type has no actions"});
      continue;
    }

    // actions[0] is the null action: all mass on outcome 0, zero cost.
    {
      const ActionSpec& null_action = ty.actions[0];
      bool null_ok = null_action.prob.size() == m &&
                     std::abs(null_action.cost) <= kTieTol;
      if (null_ok) {
        null_ok = std::abs(null_action.prob[0] - 1.0) <= kProbTol;
        for (std::size_t o = 1; o < m && null_ok; ++o)
          null_ok = std::abs(null_action.prob[o]) <= kProbTol;
      }
      if (!null_ok)
        out.push_back({action_path(i, 0),
                       "actions[0] must be the null action: prob (1,0,...,0), cost 0"});
    }

    for (std::size_t a = 0; a < ty.actions.size(); ++a) {
      const ActionSpec& act = ty.actions[a];
      if (act.prob.size() != m) {
        out.push_back({action_path(i, a) + ".prob",
                       "probability vector length " + std::to_string(act.prob.size()) +
                           " != outcome count " + std::to_string(m)});
        continue;
      }
      double sum = 0.0;
      bool in_range = true;
      for (double p : act.prob) {
        sum += p;
        if (p < 0.0 || p > 1.0) in_range = false;
      }
      if (!in_range)
        out.push_back({action_path(i, a) + ".prob", "probability outside [0,1]"});
      if (std::abs(sum - 1.0) > kProbTol)
        out.push_back({action_path(i, a) + ".prob",
                       "probabilities sum to " + std::to_string(sum) + ", expected 1"});
      if (act.cost < 0.0)
        out.push_back({action_path(i, a) + ".cost", "cost must be >= 0"});
    }
  }
  if (!inst.types.empty() && std::abs(weight_sum - 1.0) > kProbTol)
    out.push_back({"types", "type weights sum to " + std::to_string(weight_sum) +
                                ", expected 1"});
  return out;
}

double agent_payoff(const Instance& inst, std::size_t type_id,
                    std::size_t action_id, const Contract& f) {
  if (type_id >= inst.types.size())
    throw std::out_of_range("agent_payoff: type_id out of range");
  const AgentType& ty = inst.types[type_id];
  if (action_id >= ty.actions.size())
    throw std::out_of_range("agent_payoff: action_id out of range");
  const ActionSpec& act = ty.actions[action_id];
  double pay = 0.0;
  for (std::size_t o = 0; o < act.prob.size(); ++o)
    pay += act.prob[o] * f.payments[o];
  return pay - act.cost;
}

std::size_t best_response(const Instance& inst, std::size_t type_id,
                          const Contract& f) {
  if (type_id >= inst.types.size())
    throw std::out_of_range("best_response: type_id out of range");
  const AgentType& ty = inst.types[type_id];

  std::size_t best = 0;
  double best_pay = agent_payoff(inst, type_id, 0, f);
  double best_principal = principal_value(inst, type_id, 0, f);
  for (std::size_t a = 1; a < ty.actions.size(); ++a) {
    double pay = agent_payoff(inst, type_id, a, f);
    if (pay > best_pay + kTieTol) {
      best = a;
      best_pay = pay;
      best_principal = principal_value(inst, type_id, a, f);
    } else if (pay >= best_pay - kTieTol) {
      // Agent is indifferent; break the tie in the principal's favor.
      double pu = principal_value(inst, type_id, a, f);
      if (pu > best_principal + kTieTol) {
        best = a;
        best_pay = std::max(best_pay, pay);
        best_principal = pu;
      }
    }
  }
  return best;
}

double expected_utility(const Instance& inst, const Contract& f) {
  double u = 0.0;
  for (std::size_t i = 0; i < inst.types.size(); ++i) {
    std::size_t a = best_response(inst, i, f);
    u += inst.types[i].weight * principal_value(inst, i, a, f);
  }
  return u;
}

RoundSample sample_round(const Instance& inst, const Contract& f, Rng& rng) {
  RoundSample s;
  {
    double u = rng.uniform01();
    double cum = 0.0;
    std::size_t i = 0;
    for (; i + 1 < inst.types.size(); ++i) {
      cum += inst.types[i].weight;
      if (u < cum) break;
    }
    s.type_id = i;
  }
  s.action_id = best_response(inst, s.type_id, f);
  const ActionSpec& act = inst.types[s.type_id].actions[s.action_id];
  s.outcome_id = rng.pick(act.prob);
  s.reward = inst.outcomes.values[s.outcome_id] - f.payments[s.outcome_id];
  return s;
}

}  // namespace contractlab
