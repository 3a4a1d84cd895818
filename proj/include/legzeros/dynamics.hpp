#pragma once

// Zero tracking through the first-order system
//   z_ℓ' = ∏_j (j² - z_ℓ²) / ∏_{j≠ℓ} (z_j² - z_ℓ²)
// started from z_ℓ(0) = n+1-2ℓ, with the second-order system
//   z_ℓ'' + 2 z_ℓ z_ℓ' = Σ_{j≠ℓ} 2 z_ℓ' z_j' / (z_ℓ - z_j)
// used to cross the removable singularities of the first and as a residual
// check on spectral trajectories.

#include <span>
#include <vector>

#include "legzeros/zero_set.hpp"

namespace legzeros {

struct InitialData {
  std::vector<double> zeros;   // n+1-2ℓ, descending
  std::vector<double> slopes;  // z_ℓ'(0)
};

/// x = 0 data: the limit set and the closed-form slopes.
InitialData initial_conditions(int n);

/// The first-order right-hand side is 0/0 wherever z_j = -z_ℓ for some pair
/// (x = 0, and isolated points where one zero passes k while another passes
/// -k). Inside min |z_j + z_ℓ| < kEnterSecondOrder the integrator carries z'
/// and follows the second-order system instead, returning to the first-order
/// system once the gap exceeds kLeaveSecondOrder.
inline constexpr double kEnterSecondOrder = 0.05;
inline constexpr double kLeaveSecondOrder = 0.1;
inline constexpr double kInitialStep = 1e-4;
inline constexpr double kStepFloor = 1e-10;
inline constexpr double kMaxTrackedX = 50.0;

struct OdeReport {
  std::vector<ZeroSet> states;  // one per requested x, same order
  int accepted_steps = 0;
  int rejected_steps = 0;
  double max_trace_drift = 0.0;     // max |Σ z_ℓ - n(n+1)/2 · tanh x|
  double max_identity_defect = 0.0; // max_ℓ |Σ_j z_j'/(ℓ² - z_j²) - 1|, first-order steps
  bool monotone = true;             // every branch increased on every step
};

/// Integrates once through the ascending, non-negative grid `xs` and records
/// the zeros at each point. The local error estimate of the embedded 5(4)
/// pair is held below tol per unit of x.
OdeReport integrate_path(int n, std::span<const double> xs, double tol);

/// Zeros at x_target; negative targets are integrated to |x_target| and
/// mirrored.
ZeroSet integrate_to(int n, double x_target, double tol);

/// First-order right-hand side at the given zeros.
std::vector<double> dubrovin_velocity(const ZeroSet& zs);

/// Per-branch residual of the second-order system, with z' and z'' taken by
/// central differences of step h on spectrally computed zeros.
std::vector<double> rs_residual(int n, double x, double h);

}  // namespace legzeros
