#include "legzeros/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "legzeros/error.hpp"

namespace legzeros {

namespace {

void require_degree(int n, const char* where) {
  if (n < 1 || n > kMaxDegree) {
    std::ostringstream os;
    os << where << ": degree must lie in [1, " << kMaxDegree << "], got " << n;
    fail(ErrorKind::invalid_input, os.str());
  }
}

void require_off_pole(int n, double z) {
  for (int j = 1; j <= n; ++j) {
    if (std::abs(z - j) <= kPoleRadius) {
      std::ostringstream os;
      os << "psi: z = " << z << " is at the pole z = " << j;
      fail(ErrorKind::pole, os.str());
    }
  }
}

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::capacity, "128-bit overflow");
  return r;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::capacity, "128-bit overflow");
  return r;
}

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Reduced fraction, denominator kept positive.
struct Rational {
  Int128 num = 0;
  Int128 den = 1;

  void mul(Int128 p, Int128 q) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const Int128 g = gcd128(p, q);
    p /= g;
    q /= g;
    const Int128 g1 = gcd128(p, den);
    const Int128 g2 = gcd128(num, q);
    num = checked_mul(num / g2, p / g1);
    den = checked_mul(den / g1, q / g2);
  }
};

// Series coefficients r_m = binom(n,m) ∏_{j=1}^m (z+n+1-j)/(z-j), built
// incrementally in m.
std::vector<double> series_coefficients(int n, double z) {
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  r[0] = 1.0;
  for (int m = 1; m <= n; ++m)
    r[m] = r[m - 1] * (static_cast<double>(n - m + 1) / m) * ((z + n + 1 - m) / (z - m));
  return r;
}

// Σ_m e^{-2mx} r_m rewritten so that the power base never exceeds 1, together
// with the log of the matching prefactor: ψ = exp(log_prefactor) · sum.
struct SeriesParts {
  double sum = 0.0;
  double log_prefactor = 0.0;
};

SeriesParts series_parts(const LegendreParams& p) {
  const auto r = series_coefficients(p.n, p.z);
  SeriesParts out;
  if (p.x >= 0) {
    const double u = std::exp(-2.0 * p.x);
    double pw = 1.0;
    for (int m = 0; m <= p.n; ++m) {
      out.sum += pw * r[m];
      pw *= u;
    }
    out.log_prefactor = p.z * p.x - p.n * std::log1p(u);
  } else {
    // e^{-2mx} = e^{-2nx} v^{n-m} with v = e^{2x}, and e^{-2nx}/(1+e^{-2x})^n
    // = (1+v)^{-n}.
    const double v = std::exp(2.0 * p.x);
    double pw = 1.0;
    for (int m = p.n; m >= 0; --m) {
      out.sum += pw * r[m];
      pw *= v;
    }
    out.log_prefactor = p.z * p.x - p.n * std::log1p(v);
  }
  return out;
}

}  // namespace

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  std::string digits;
  // Work with negative values so INT128_MIN does not overflow.
  Int128 t = neg ? v : -v;
  while (t != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(t % 10)));
    t /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

double eval_psi(const LegendreParams& p) {
  require_degree(p.n, "eval_psi");
  require_off_pole(p.n, p.z);
  if (!std::isfinite(p.x) || !std::isfinite(p.z))
    fail(ErrorKind::invalid_input, "eval_psi: x and z must be finite");
  const auto parts = series_parts(p);
  if (parts.log_prefactor > std::log(std::numeric_limits<double>::max()))
    fail(ErrorKind::range, "eval_psi: e^{zx} overflows; use eval_log_psi");
  const double value = std::exp(parts.log_prefactor) * parts.sum;
  if (!std::isfinite(value)) fail(ErrorKind::range, "eval_psi: result overflows; use eval_log_psi");
  return value;
}

LogPsi eval_log_psi(const LegendreParams& p) {
  require_degree(p.n, "eval_log_psi");
  require_off_pole(p.n, p.z);
  if (!std::isfinite(p.x) || !std::isfinite(p.z))
    fail(ErrorKind::invalid_input, "eval_log_psi: x and z must be finite");
  const auto parts = series_parts(p);
  if (parts.sum == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
  return {parts.log_prefactor + std::log(std::abs(parts.sum)), parts.sum > 0 ? 1 : -1};
}

double eval_psi_at_zero(int n, double z) {
  require_degree(n, "eval_psi_at_zero");
  require_off_pole(n, z);
  double v = 1.0;
  for (int j = 1; j <= n; ++j) v *= (z + n + 1 - 2 * j) / (z - j);
  return v;
}

Int128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    // r·(n-k+i) is divisible by i at every step.
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

ExactCharPoly charpoly_exact(int n) {
  require_degree(n, "charpoly_exact");
  ExactCharPoly out{n, {}};
  out.table.reserve(static_cast<std::size_t>(n) + 1);
  try {
    for (int m = 0; m <= n; ++m) {
      std::vector<Int128> poly{1};  // ascending powers of z
      auto multiply_linear = [&poly](Int128 root_shift) {
        // poly *= (z + root_shift)
        std::vector<Int128> next(poly.size() + 1, 0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k + 1] = checked_add(next[k + 1], poly[k]);
          next[k] = checked_add(next[k], checked_mul(poly[k], root_shift));
        }
        poly = std::move(next);
      };
      for (int j = 1; j <= m; ++j) multiply_linear(n + 1 - j);
      for (int k = m + 1; k <= n; ++k) multiply_linear(-k);
      const Int128 b = binomial(n, m);
      for (auto& c : poly) c = checked_mul(c, b);
      out.table.push_back(std::move(poly));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::capacity) throw;
    std::ostringstream os;
    os << "charpoly_exact: coefficients for n = " << n
       << " overflow 128-bit integers; maximal supported degree is " << kMaxExactDegree;
    fail(ErrorKind::capacity, os.str());
  }
  return out;
}

double CharPoly::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double CharPoly::magnitude(double z) const {
  double acc = 0.0;
  const double az = std::abs(z);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * az + std::abs(*it);
  return acc;
}

CharPoly charpoly_at(int n, double x) {
  if (!std::isfinite(x)) fail(ErrorKind::invalid_input, "charpoly_at: x must be finite");
  if (x < -300.0) fail(ErrorKind::range, "charpoly_at: x < -300 overflows e^{-2x}; use the mirror reduction");
  const auto exact = charpoly_exact(n);
  CharPoly out{n, std::exp(-2.0 * x), std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  for (int k = 0; k <= n; ++k) {
    long double acc = 0.0L;
    for (int m = n; m >= 0; --m)
      acc = acc * out.u + static_cast<long double>(exact.table[m][k]);
    out.coeffs[k] = static_cast<double>(acc);
    if (!std::isfinite(out.coeffs[k]))
      fail(ErrorKind::range, "charpoly_at: coefficients overflow at this x; use the mirror reduction");
  }
  return out;
}

NormConstants norm_constants(int n) {
  require_degree(n, "norm_constants");
  NormConstants out{n, {}};
  for (int j = 1; j <= n; ++j) {
    const Int128 binomial_form =
        checked_mul(checked_mul(j, binomial(2 * j, j)), binomial(n + j, n - j));

    Rational product{(n - j) % 2 == 0 ? Int128{2 * j} : Int128{-2 * j}, 1};
    for (int k = 1; k <= n; ++k)
      if (k != j) product.mul(j + k, j - k);

    if (product.den != 1 || product.num != binomial_form) {
      std::ostringstream os;
      os << "norm_constants: closed forms disagree at n = " << n << ", j = " << j << ": "
         << to_string(binomial_form) << " vs " << to_string(product.num) << '/'
         << to_string(product.den);
      throw std::logic_error(os.str());
    }
    out.nu.push_back(binomial_form);
  }
  return out;
}

double schrodinger_residual(const LegendreParams& p, double h) {
  const double f0 = eval_psi(p);
  const double fp = eval_psi({p.n, p.x + h, p.z});
  const double fm = eval_psi({p.n, p.x - h, p.z});
  const double second = (fp - 2.0 * f0 + fm) / (h * h);
  const double c = std::cosh(p.x);
  const double potential = p.n * (p.n + 1) / (c * c);
  return std::abs(second + (potential - p.z * p.z) * f0);
}

double bound_state_norm_integral(int n, int j, double a, double b, double step) {
  if (j < 1 || j > n) fail(ErrorKind::invalid_input, "bound_state_norm_integral: j must lie in [1, n]");
  if (!(b > a) || !(step > 0)) fail(ErrorKind::invalid_input, "bound_state_norm_integral: bad interval");
  const auto count = static_cast<long>(std::llround((b - a) / step));
  const double h = (b - a) / static_cast<double>(count);
  double acc = 0.0;
  for (long i = 0; i <= count; ++i) {
    const double x = a + h * static_cast<double>(i);
    const double v = eval_psi({n, x, -static_cast<double>(j)});
    acc += (i == 0 || i == count ? 0.5 : 1.0) * v * v;
  }
  return acc * h;
}

}  // namespace legzeros
