#include "legzeros/spectral.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "legzeros/legendre.hpp"

namespace legzeros {

double bundle_x_min(int n) {
  const double nu_n = static_cast<double>(norm_constants(n).nu.back());
  return (std::log(nu_n) - std::log(1e300)) / (2.0 * n);
}

SpectralBundle build_bundle(int n, double x) {
  if (n < 1 || n > kMaxDegree) {
    std::ostringstream os;
    os << "build_bundle: degree must lie in [1, " << kMaxDegree << "], got " << n;
    fail(ErrorKind::invalid_input, os.str());
  }
  if (!std::isfinite(x)) fail(ErrorKind::invalid_input, "build_bundle: x must be finite");
  if (x < bundle_x_min(n)) {
    std::ostringstream os;
    os << "build_bundle: e^{-2nx} overflows at x = " << x << "; evaluate at -x and mirror";
    fail(ErrorKind::range, os.str());
  }

  const auto nu = norm_constants(n);
  const auto sz = static_cast<std::size_t>(n);
  const long double lx = x;

  SpectralBundle b;
  b.n = n;
  b.x = x;
  b.K = Matrix(sz, sz);
  b.E = Matrix(sz, sz);
  b.N = Matrix(sz, sz);

  WideMatrix en(sz, sz);
  WideMatrix nt(sz, sz);
  for (std::size_t j = 0; j < sz; ++j) {
    const long double jj = static_cast<long double>(j + 1);
    const long double nu_j = static_cast<long double>(nu.nu[j]);
    const long double e_j = std::exp(-2.0L * jj * lx);
    b.K(j, j) = static_cast<double>(jj);
    b.E(j, j) = static_cast<double>(e_j);
    for (std::size_t k = 0; k < sz; ++k) {
      const long double kk = static_cast<long double>(k + 1);
      const long double nu_k = static_cast<long double>(nu.nu[k]);
      b.N(j, k) = static_cast<double>(nu_j / (jj + kk));
      en(j, k) = e_j * nu_j / (jj + kk);
      nt(j, k) = std::sqrt(nu_j * nu_k) * std::exp(-(jj + kk) * lx) / (jj + kk);
    }
  }
  b.Ntilde = nt.cast<double>();

  const auto eye = WideMatrix::identity(sz);

  // (I - EN) and (I + EN)^{-1} commute, so one left solve gives the product.
  WideMatrix cayley_en = solve_linear(eye + en, eye - en);
  for (std::size_t j = 0; j < sz; ++j)
    for (std::size_t k = 0; k < sz; ++k) cayley_en(j, k) *= static_cast<long double>(j + 1);
  b.Z = cayley_en.cast<double>();

  // (I - Ñ)(I + Ñ)^{-1} = I - 2Y with Y = (I + Ñ)^{-1} Ñ.
  WideMatrix y = solve_linear(eye + nt, nt);
  long double asym = 0.0L;
  for (std::size_t j = 0; j < sz; ++j)
    for (std::size_t k = j + 1; k < sz; ++k) {
      asym = std::max(asym, std::abs(y(j, k) - y(k, j)));
      y(j, k) = y(k, j) = 0.5L * (y(j, k) + y(k, j));
    }
  const long double ymax = y.max_abs();
  b.symmetry_defect = ymax > 0 ? static_cast<double>(asym / ymax) : 0.0;

  b.defect = Matrix(sz, sz);
  b.S = Matrix(sz, sz);
  for (std::size_t j = 0; j < sz; ++j)
    for (std::size_t k = 0; k < sz; ++k) {
      const long double w =
          2.0L * std::sqrt(static_cast<long double>((j + 1) * (k + 1))) * y(j, k);
      b.defect(j, k) = static_cast<double>(w);
      b.S(j, k) = static_cast<double>((j == k ? static_cast<long double>(j + 1) : 0.0L) - w);
    }
  return b;
}

ZeroSet zeros_spectral_direct(int n, double x, double tol) {
  const auto b = build_bundle(n, x);
  const auto eig = sym_eigenvalues(b.S, tol);

  // Near an integer m the remainder λ - m is resolved by diagonalizing
  // S - mI = (K - mI) - defect, whose row m has no cancellation.
  std::map<int, std::vector<double>> shifted;
  auto shifted_spectrum = [&](int m) -> const std::vector<double>& {
    auto it = shifted.find(m);
    if (it != shifted.end()) return it->second;
    Matrix a = b.defect;
    for (std::size_t j = 0; j < a.rows(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        a(j, k) = (j == k ? static_cast<double>(static_cast<int>(j) + 1 - m) : 0.0) - a(j, k);
    return shifted.emplace(m, sym_eigenvalues(a, tol).values).first->second;
  };

  ZeroSet zs{n, x, {}};
  zs.zeros.reserve(eig.values.size());
  for (double lambda : eig.values) {
    const int m = static_cast<int>(std::nearbyint(lambda));
    const double coarse = lambda - m;
    if (m == 0 || std::abs(m) > n || std::abs(coarse) > 0.25) {
      zs.zeros.push_back({m, coarse});
      continue;
    }
    double best = coarse;
    double best_dist = std::numeric_limits<double>::infinity();
    for (double mu : shifted_spectrum(m)) {
      if (std::abs(mu - coarse) < best_dist) {
        best_dist = std::abs(mu - coarse);
        best = mu;
      }
    }
    zs.zeros.push_back(AnchoredZero::normalized(m, best));
  }
  return zs;
}

ZeroSet zeros_spectral(int n, double x, double tol) {
  if (x < 0) return zeros_spectral_direct(n, -x, tol).mirrored();
  return zeros_spectral_direct(n, x + 0.0, tol);
}

double eigen_consistency(int n, double x) {
  const auto p = charpoly_at(n, x);
  double worst = 0.0;
  for (double lambda : zeros_spectral(n, x).values()) {
    const double scale = p.magnitude(lambda);
    worst = std::max(worst, scale > 0 ? std::abs(p(lambda)) / scale : 0.0);
  }
  return worst;
}

}  // namespace legzeros
