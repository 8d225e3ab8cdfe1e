#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace contractlab {

struct SuiteReport {
  std::string suite;
  std::size_t checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Named property suites over seeded random instances:
//   continuity     u(f) - u(f+gamma) <= 2(||gamma||_inf + ||r||_inf / alpha)
//                  for gamma = alpha (v - f) + r
//   geometry       sum_o (p(o|a*(f+gamma)) - p(o|a*(f))) gamma_o >= 0 per type
//   linear-monotone  u(alpha)/(1-alpha) non-decreasing and
//                    u(alpha) - u(alpha+eps) <= eps
//   regions        closed-form best-response regions of the hard families
//   fosd           generated FOSD instances pass the dominance check; a
//                  crossing-CDF counterexample is named
//   payoffs        closed-form payoff claims of the hard families
// `samples` scales the suite's sampling effort (instances or draws).
SuiteReport run_verify_suite(const std::string& name, std::size_t samples,
                             std::uint64_t seed);

std::vector<std::string> verify_suite_names();

}  // namespace contractlab
