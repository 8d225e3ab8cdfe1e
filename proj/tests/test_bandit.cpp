#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "contractlab/bandit.hpp"

using namespace contractlab;

TEST_CASE("fresh state selects the lowest arm index") {
  BanditState state(5, 100);
  for (std::size_t a = 0; a < 5; ++a) CHECK(state.index[a] == 1.0);
  CHECK(ucb_select(state) == 0);
}

TEST_CASE("single arm is selected every round") {
  BanditState state(1, 50);
  for (int t = 0; t < 50; ++t) {
    CHECK(ucb_select(state) == 0);
    ucb_update(state, 0, 0.3);
  }
}

TEST_CASE("first-pull indices stay at the cap") {
  const std::size_t T = 100;
  // Raw reward 1.0 maps to 1.0: min(1, 1 + sqrt(2 ln 100)) = 1.
  BanditState a(2, T);
  ucb_update(a, 0, 1.0);
  CHECK(a.index[0] == 1.0);
  // Raw reward -1.0 maps to 0.0: sqrt(2 ln 100) ~ 3.035 > 1, cap binds.
  BanditState b(2, T);
  ucb_update(b, 0, -1.0);
  CHECK(b.index[0] == 1.0);
}

TEST_CASE("index after 100 zero-mean pulls") {
  const std::size_t T = 100;
  BanditState state(1, T);
  for (int t = 0; t < 100; ++t) ucb_update(state, 0, -1.0);  // mapped 0.0
  double expected = std::sqrt(2.0 * std::log(100.0) / 100.0);
  CHECK(state.index[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.3035).epsilon(1e-3));
}

TEST_CASE("rejects rewards outside [-1, 1]") {
  BanditState state(2, 10);
  CHECK_THROWS_AS(ucb_update(state, 0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ucb_update(state, 0, -1.01), std::invalid_argument);
}

namespace {

// From-scratch re-simulation of the capped index, recomputed each round
// rather than updated incrementally; the independent oracle for the
// two-arm pull-count bound.
std::size_t hand_simulated_suboptimal_pulls(std::size_t T) {
  std::vector<std::size_t> pulls(2, 0);
  std::vector<double> sums(2, 0.0);
  const double mapped[2] = {1.0, 0.0};  // raw rewards +1 / -1
  std::size_t subopt = 0;
  for (std::size_t t = 0; t < T; ++t) {
    double idx[2];
    for (int a = 0; a < 2; ++a)
      idx[a] = pulls[a] == 0
                   ? 1.0
                   : std::min(1.0, sums[a] / pulls[a] +
                                       std::sqrt(2.0 * std::log(double(T)) / pulls[a]));
    int pick = (idx[1] > idx[0] || (idx[1] == idx[0] && pulls[1] < pulls[0])) ? 1 : 0;
    pulls[pick] += 1;
    sums[pick] += mapped[pick];
    if (pick == 1) ++subopt;
  }
  return subopt;
}

}  // namespace

TEST_CASE("two deterministic arms: suboptimal pulls bounded by ceil(2 ln T) + 1") {
  const std::size_t T = 100;
  BanditState state(2, T);
  std::size_t subopt = 0;
  for (std::size_t t = 0; t < T; ++t) {
    std::size_t arm = ucb_select(state);
    double reward = arm == 0 ? 1.0 : -1.0;  // mapped: 1 / 0
    ucb_update(state, arm, reward);
    if (arm == 1) ++subopt;
    CHECK(state.pulls[0] + state.pulls[1] == state.round);
  }
  CHECK(subopt == hand_simulated_suboptimal_pulls(T));
  CHECK(subopt <= static_cast<std::size_t>(std::ceil(2.0 * std::log(100.0))) + 1);
  CHECK(subopt == 10);
}

TEST_CASE("indices never exceed 1 and pull counts track rounds") {
  BanditState state(4, 200);
  // Deterministic reward tape covering the full range.
  for (std::size_t t = 0; t < 200; ++t) {
    std::size_t arm = ucb_select(state);
    double reward = -1.0 + 2.0 * static_cast<double>((t * 7919) % 101) / 100.0;
    ucb_update(state, arm, reward);
    std::size_t total = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      CHECK(state.index[a] <= 1.0);
      total += state.pulls[a];
    }
    CHECK(total == state.round);
  }
}
