#pragma once

// The invariant suite behind `legzeros verify`: every structural property of
// the zeros and of the three ways of computing them, checked for n <= n_max.

#include <string>
#include <vector>

namespace legzeros {

struct CheckResult {
  std::string suite;   // module the property belongs to
  std::string name;
  bool passed = false;
  std::string detail;  // measured worst value against its bound, or the error
};

struct VerifyReport {
  int n_max = 0;
  std::vector<CheckResult> checks;
  bool passed() const noexcept;
  int failures() const noexcept;
};

/// Tolerances are calibrated for n <= 12.
inline constexpr int kMaxVerifyDegree = 12;

/// Largest e_{k+1}/e_k² seen along Newton from {1.4, -0.5} at x = ln 2 / 2,
/// n = 2, with a safety factor; a regression guard on quadratic convergence.
inline constexpr double kNewtonQuadraticBound = 1.0;

VerifyReport run_verification(int n_max);

}  // namespace legzeros
