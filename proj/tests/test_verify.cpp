#include <doctest.h>

#include <stdexcept>

#include "contractlab/verify.hpp"

using namespace contractlab;

TEST_CASE("property suites pass on a conforming build") {
  struct Plan {
    const char* name;
    std::size_t samples;
  };
  const Plan plans[] = {{"continuity", 60}, {"geometry", 60},
                        {"linear-monotone", 15}, {"regions", 400},
                        {"fosd", 25}, {"payoffs", 6}};
  for (const Plan& plan : plans) {
    SuiteReport report = run_verify_suite(plan.name, plan.samples, 2718);
    INFO(plan.name);
    for (const auto& v : report.violations) INFO(v);
    CHECK(report.ok());
    CHECK(report.checked > 0);
  }
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(run_verify_suite("nope", 1, 0), std::invalid_argument);
  CHECK(verify_suite_names().size() == 6);
}
