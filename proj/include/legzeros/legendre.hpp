#pragma once

// ψ_n(x, z) = Γ(1-z) P_n^z(tanh x) for integral degree n, its exact
// characteristic polynomial in z, and the bound-state normalization constants.

#include <string>
#include <vector>

namespace legzeros {

using Int128 = __int128;

std::string to_string(Int128 v);

/// Largest degree accepted anywhere in the library.
inline constexpr int kMaxDegree = 30;
/// Largest degree whose expanded characteristic polynomial fits in 128 bits.
inline constexpr int kMaxExactDegree = 24;
/// Radius of the excluded neighbourhood around the poles z = 1, ..., n.
inline constexpr double kPoleRadius = 1e-12;

struct LegendreParams {
  int n = 1;
  double x = 0.0;
  double z = 0.0;
};

/// Terminating-series value of ψ_n(x, z). Never calls a gamma function.
/// Throws `pole` for z within 1e-12 of {1..n} and `range` when e^{zx}
/// overflows (use eval_log_psi there).
double eval_psi(const LegendreParams& p);

struct LogPsi {
  double log_abs = 0.0;  // -inf when ψ vanishes
  int sign = 0;
};

/// log|ψ_n(x, z)| and its sign; finite wherever eval_psi would overflow.
LogPsi eval_log_psi(const LegendreParams& p);

/// ψ_n(0, z) = ∏_{j=1}^n (z + n + 1 - 2j)/(z - j).
double eval_psi_at_zero(int n, double z);

/// Exact binomial coefficient; throws `capacity` on overflow.
Int128 binomial(int n, int k);

/// det(zI - Z(x)) = Σ_m u^m Σ_k table[m][k] z^k with u = e^{-2x}.
struct ExactCharPoly {
  int n = 0;
  std::vector<std::vector<Int128>> table;  // (n+1) x (n+1)
};

/// Row m is binom(n,m)·∏_{j=1}^m (z+n+1-j)·∏_{k=m+1}^n (z-k), expanded with
/// overflow-checked 128-bit arithmetic. Throws `capacity` for n > 24.
ExactCharPoly charpoly_exact(int n);

/// The characteristic polynomial at a fixed x, coefficients in ascending
/// powers of z.
struct CharPoly {
  int n = 0;
  double u = 0.0;
  std::vector<double> coeffs;

  double operator()(double z) const;
  /// Σ_k |c_k| |z|^k: the rounding scale for evaluating the polynomial at z.
  double magnitude(double z) const;
};

CharPoly charpoly_at(int n, double x);

struct NormConstants {
  int n = 0;
  std::vector<Int128> nu;  // nu[j-1] = ν_j

  double value(int j) const { return static_cast<double>(nu.at(j - 1)); }
};

/// ν_j = j·binom(2j,j)·binom(n+j,n-j); the product form
/// (-1)^{n-j} 2j ∏_{k≠j} (j+k)/(j-k) is evaluated alongside in reduced
/// rational arithmetic and must agree exactly.
NormConstants norm_constants(int n);

/// |ψ'' + (n(n+1)/cosh²x - z²)ψ| with ψ'' from a central difference of step h.
double schrodinger_residual(const LegendreParams& p, double h);

/// Trapezoid rule for ∫_a^b ψ_n(x, -j)² dx; the exact integral over the real
/// line is 1/ν_j.
double bound_state_norm_integral(int n, int j, double a, double b, double step);

}  // namespace legzeros
