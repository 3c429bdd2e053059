#pragma once

#include <cmath>

#include "cavtrap/coefficients.hpp"
#include "cavtrap/params.hpp"

namespace testsupport {

// One spline table per test process; several cases share it.
inline const cavtrap::CoefficientCache& case_a_cache() {
  static cavtrap::CoefficientCache cache(
      cavtrap::scenario_params(cavtrap::Scenario::case_a));
  return cache;
}

// Caches the last lookup; turns repeated solves at one phase-space point
// into a single direct solve.
class MemoProvider final : public cavtrap::BlochProvider {
 public:
  explicit MemoProvider(const cavtrap::BlochProvider& base) : base_(&base) {}

  cavtrap::BlochPoint at(double g, double s) const override {
    if (!(g == g_ && s == s_)) {
      memo_ = base_->at(g, s);
      g_ = g;
      s_ = s;
    }
    return memo_;
  }

 private:
  const cavtrap::BlochProvider* base_;
  mutable double g_ = std::nan("");
  mutable double s_ = std::nan("");
  mutable cavtrap::BlochPoint memo_;
};

} // namespace testsupport
