#include <doctest.h>

#include "cavtrap/params.hpp"
#include "cavtrap/validate.hpp"

using namespace cavtrap;

TEST_SUITE("validate") {

TEST_CASE("self-check sweep is green") {
  const auto checks = run_self_checks(scenario_params(Scenario::case_a));
  CHECK(checks.size() >= 15);
  for (const CheckResult& c : checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
    CHECK_FALSE(c.name.empty());
    CHECK_FALSE(c.detail.empty());
  }
  CHECK(all_passed(checks));

  const std::string text = format_checks(checks);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find(checks.front().name) != std::string::npos);
}

} // TEST_SUITE
