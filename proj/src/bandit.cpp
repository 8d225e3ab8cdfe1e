#include "contractlab/bandit.hpp"

#include <cmath>
#include <stdexcept>

namespace contractlab {

BanditState::BanditState(std::size_t num_arms, std::size_t horizon_)
    : horizon(horizon_),
      pulls(num_arms, 0),
      mapped_sum(num_arms, 0.0),
      index(num_arms, 1.0) {
  if (num_arms == 0) throw std::invalid_argument("BanditState: no arms");
  if (horizon_ == 0) throw std::invalid_argument("BanditState: zero horizon");
}

std::size_t ucb_select(const BanditState& state) {
  if (state.round >= state.horizon)
    throw std::logic_error("ucb_select: horizon exhausted");
  std::size_t best = 0;
  for (std::size_t a = 1; a < state.num_arms(); ++a) {
    if (state.index[a] > state.index[best] ||
        (state.index[a] == state.index[best] && state.pulls[a] < state.pulls[best]))
      best = a;
  }
  return best;
}

void ucb_update(BanditState& state, std::size_t arm, double reward) {
  if (arm >= state.num_arms()) throw std::out_of_range("ucb_update: arm");
  if (reward < -1.0 - 1e-12 || reward > 1.0 + 1e-12)
    throw std::invalid_argument("ucb_update: reward outside [-1, 1]");

  state.round += 1;
  state.pulls[arm] += 1;
  state.mapped_sum[arm] += (reward + 1.0) / 2.0;

  const double n = static_cast<double>(state.pulls[arm]);
  const double mean = state.mapped_sum[arm] / n;
  const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(state.horizon)) / n);
  state.index[arm] = std::min(1.0, mean + bonus);
}

}  // namespace contractlab
