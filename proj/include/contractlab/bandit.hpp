#pragma once

#include <cstddef>
#include <vector>

namespace contractlab {

// Capped-index UCB over a fixed horizon. Rewards arrive in [-1, 1] and are
// mapped to [0, 1] internally; indices are min(1, mean + sqrt(2 ln T / T(a)))
// with natural logarithm. Untried arms sit at the cap.
struct BanditState {
  std::size_t horizon = 0;
  std::size_t round = 0;  // rounds completed
  std::vector<std::size_t> pulls;
  std::vector<double> mapped_sum;  // sum of (reward+1)/2
  std::vector<double> index;       // r-hat, always <= 1

  BanditState(std::size_t num_arms, std::size_t horizon_);

  std::size_t num_arms() const { return pulls.size(); }
};

// Argmax of the index; ties broken by fewest pulls, then lowest arm index.
std::size_t ucb_select(const BanditState& state);

// Record the round's reward for the selected arm and refresh its index.
void ucb_update(BanditState& state, std::size_t arm, double reward);

}  // namespace contractlab
