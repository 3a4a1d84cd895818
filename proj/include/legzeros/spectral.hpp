#pragma once

// Zeros as eigenvalues of the trajectory matrix Z(x) = K(I - EN)(I + EN)^{-1}
// and of its symmetric similar form S(x) = K^{1/2}(I - Ñ)(I + Ñ)^{-1}K^{1/2}.

#include "legzeros/numkit.hpp"
#include "legzeros/zero_set.hpp"

namespace legzeros {

struct SpectralBundle {
  int n = 0;
  double x = 0.0;
  Matrix K;        // diag(1..n)
  Matrix N;        // ν_j/(j+k)
  Matrix E;        // diag(e^{-2jx})
  Matrix Z;        // K(I - EN)(I + EN)^{-1}, non-symmetric
  Matrix Ntilde;   // sqrt(ν_j ν_k) e^{-(j+k)x}/(j+k)
  Matrix S;        // symmetric, same spectrum as Z
  Matrix defect;   // K - S = 2 K^{1/2} Ñ(I + Ñ)^{-1} K^{1/2}, formed without cancellation
  double symmetry_defect = 0.0;  // relative asymmetry of Ñ(I+Ñ)^{-1} before averaging
};

/// Smallest x for which the bundle is representable (ν_n e^{-2nx} <= 1e300).
double bundle_x_min(int n);

/// Builds all matrices at x >= bundle_x_min(n); throws `singular_matrix` where
/// I + Ñ is singular to working precision (n|x| large, x < 0). The Cayley transform is
/// formed in extended precision because I + Ñ has condition number up to
/// ~1e8 near x = 0 for n = 12.
SpectralBundle build_bundle(int n, double x);

/// Zeros at x sorted descending. Negative x is reduced to |x| through the
/// exact antisymmetry z_ℓ(-x) = -z_{n+1-ℓ}(x).
ZeroSet zeros_spectral(int n, double x, double tol = kDefaultEigenTol);

/// Same, but evaluates the matrices at x itself even when x < 0. Accuracy
/// degrades as Ñ grows; used to test the antisymmetry where both signs are
/// directly computable.
ZeroSet zeros_spectral_direct(int n, double x, double tol = kDefaultEigenTol);

/// Max over the eigenvalues λ of S of |p(λ)| / Σ_k |c_k||λ|^k, where p is the
/// exact-expansion characteristic polynomial at x.
double eigen_consistency(int n, double x);

}  // namespace legzeros
