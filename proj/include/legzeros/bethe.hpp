#pragma once

// The rational system ∏_j (ℓ - z_j)/(ℓ + z_j) = (-1)^{n-ℓ} e^{-2ℓx}, ℓ = 1..n,
// satisfied by the zeros at every x ≠ 0.

#include <vector>

#include "legzeros/zero_set.hpp"

namespace legzeros {

struct BetheResidual {
  std::vector<double> values;  // ∏_j (ℓ-z_j)/(ℓ+z_j) - (-1)^{n-ℓ} e^{-2ℓx}
};

/// Log form L_ℓ = Σ_j ln|(ℓ - z_j)/(ℓ + z_j)| + 2ℓx, with the sign of the
/// product tracked separately.
struct BetheLogResidual {
  std::vector<double> values;
  std::vector<int> signs;  // sign of ∏_j (ℓ - z_j)/(ℓ + z_j)

  double max_abs() const;
  bool signs_match(int n) const;  // signs[ℓ-1] == (-1)^{n-ℓ} for all ℓ
};

BetheResidual bethe_residual(const ZeroSet& zs);
BetheLogResidual bethe_log_residual(const ZeroSet& zs);

struct NewtonReport {
  ZeroSet zeros;
  int iterations = 0;
  std::vector<double> residual_history;  // max |L_ℓ| before each step and at exit
};

inline constexpr int kDefaultNewtonIterations = 50;

/// Newton refinement on the log form. The Jacobian ∂L_ℓ/∂z_j = -2ℓ/(ℓ² - z_j²)
/// is row/column equilibrated before the solve; steps are halved up to 8
/// times while the residual norm fails to drop or the step would reorder the
/// zeros. At x = 0 every factor degenerates to 0/0 and the known limit
/// {n+1-2ℓ} is returned.
NewtonReport refine_newton_report(const ZeroSet& zs, double tol,
                                  int max_iter = kDefaultNewtonIterations);

ZeroSet refine_newton(const ZeroSet& zs, double tol,
                      int max_iter = kDefaultNewtonIterations);

/// Spectral seed followed by refine_newton.
ZeroSet zeros_newton(int n, double x, double tol);

}  // namespace legzeros
