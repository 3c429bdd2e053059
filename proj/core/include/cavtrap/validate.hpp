#pragma once

#include <string>
#include <vector>

#include "cavtrap/params.hpp"

namespace cavtrap {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail; // measured quantity and its bound
};

// Fast internal consistency sweep for one parameter set: operator algebra,
// trace preservation, steady-state quality, resolvent inversion, analytic
// gradients against finite differences, field normalization, Fock-space
// truncation margin, symmetry of the coefficient map, and step-for-step
// reproducibility of the stochastic integrator. Runs in seconds.
std::vector<CheckResult> run_self_checks(const PhysicalParams& p);

std::string format_checks(const std::vector<CheckResult>& checks);
bool all_passed(const std::vector<CheckResult>& checks);

} // namespace cavtrap
