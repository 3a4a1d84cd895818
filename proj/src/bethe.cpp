#include "legzeros/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legzeros/error.hpp"
#include "legzeros/numkit.hpp"
#include "legzeros/spectral.hpp"

namespace legzeros {

namespace {

void require_shape(const ZeroSet& zs, const char* where) {
  if (zs.n < 1 || static_cast<std::size_t>(zs.n) != zs.zeros.size()) {
    std::ostringstream os;
    os << where << ": zero set must hold exactly n = " << zs.n << " zeros";
    fail(ErrorKind::invalid_input, os.str());
  }
}

int expected_sign(int n, int l) { return (n - l) % 2 == 0 ? 1 : -1; }

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

ZeroSet x0_limit(int n) {
  ZeroSet zs{n, 0.0, {}};
  for (int l = 1; l <= n; ++l) zs.zeros.push_back({n + 1 - 2 * l, 0.0});
  return zs;
}

}  // namespace

double BetheLogResidual::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::isnan(v) ? v : std::max(m, std::abs(v));
  return m;
}

bool BetheLogResidual::signs_match(int n) const {
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] != expected_sign(n, static_cast<int>(i) + 1)) return false;
  return true;
}

BetheResidual bethe_residual(const ZeroSet& zs) {
  require_shape(zs, "bethe_residual");
  BetheResidual out;
  for (int l = 1; l <= zs.n; ++l) {
    double product = 1.0;
    for (std::size_t j = 0; j < zs.zeros.size(); ++j) {
      const double den = -zs.zeros[j].distance_from(-l);  // ℓ + z_j
      if (std::abs(den) <= 1e-12) {
        std::ostringstream os;
        os << "bethe_residual: zero " << j + 1 << " is within 1e-12 of -" << l;
        fail(ErrorKind::pole, os.str());
      }
      product *= zs.zeros[j].distance_from(l) / den;
    }
    out.values.push_back(product - expected_sign(zs.n, l) * std::exp(-2.0 * l * zs.x));
  }
  return out;
}

BetheLogResidual bethe_log_residual(const ZeroSet& zs) {
  require_shape(zs, "bethe_log_residual");
  BetheLogResidual out;
  for (int l = 1; l <= zs.n; ++l) {
    double acc = 2.0 * l * zs.x;
    int sign = 1;
    for (std::size_t j = 0; j < zs.zeros.size(); ++j) {
      const double num = zs.zeros[j].distance_from(l);
      const double den = -zs.zeros[j].distance_from(-l);
      if (den == 0.0) {
        std::ostringstream os;
        os << "bethe_log_residual: zero " << j + 1 << " sits on the pole -" << l;
        fail(ErrorKind::pole, os.str());
      }
      acc += std::log(std::abs(num)) - std::log(std::abs(den));
      if ((num < 0) != (den < 0)) sign = -sign;
    }
    out.values.push_back(acc);
    out.signs.push_back(sign);
  }
  return out;
}

NewtonReport refine_newton_report(const ZeroSet& zs, double tol, int max_iter) {
  require_shape(zs, "refine_newton");
  if (!(tol > 0) || max_iter < 1)
    fail(ErrorKind::invalid_input, "refine_newton: tol must be positive and max_iter >= 1");
  if (zs.x == 0.0) return {x0_limit(zs.n), 0, {0.0}};
  if (!zs.strictly_descending())
    fail(ErrorKind::invalid_input, "refine_newton: seed zeros must be strictly descending");

  const int n = zs.n;
  const auto sz = static_cast<std::size_t>(n);
  NewtonReport report{zs, 0, {}};
  auto residual = bethe_log_residual(report.zeros);
  if (!residual.signs_match(n))
    fail(ErrorKind::wrong_branch, "refine_newton: seed violates the sign pattern (-1)^{n-l}");
  report.residual_history.push_back(residual.max_abs());

  while (!(residual.max_abs() <= tol)) {
    if (report.iterations == max_iter) {
      std::ostringstream os;
      os << "refine_newton: no convergence after " << max_iter
         << " iterations; last max |log residual| = " << residual.max_abs();
      fail(ErrorKind::non_convergence, os.str());
    }

    Matrix jac(sz, sz);
    for (std::size_t l = 0; l < sz; ++l) {
      const int ell = static_cast<int>(l) + 1;
      for (std::size_t j = 0; j < sz; ++j) {
        const auto& z = report.zeros.zeros[j];
        const double diff_sq = z.distance_from(ell) * -z.distance_from(-ell);  // ℓ² - z_j²
        jac(l, j) = -2.0 * ell / diff_sq;
      }
    }
    std::vector<double> col_scale(sz);
    for (std::size_t j = 0; j < sz; ++j) {
      double m = 0.0;
      for (std::size_t l = 0; l < sz; ++l) m = std::max(m, std::abs(jac(l, j)));
      col_scale[j] = 1.0 / m;
      for (std::size_t l = 0; l < sz; ++l) jac(l, j) *= col_scale[j];
    }
    Matrix rhs(sz, 1);
    for (std::size_t l = 0; l < sz; ++l) {
      double m = 0.0;
      for (std::size_t j = 0; j < sz; ++j) m = std::max(m, std::abs(jac(l, j)));
      for (std::size_t j = 0; j < sz; ++j) jac(l, j) /= m;
      rhs(l, 0) = -residual.values[l] / m;
    }
    const Matrix step = solve_linear(jac, rhs);

    const double current = norm2(residual.values);
    double t = 1.0;
    bool accepted = false;
    ZeroSet trial = report.zeros;
    BetheLogResidual trial_residual;
    for (int halvings = 0; halvings <= 8 && !accepted; ++halvings, t *= 0.5) {
      trial = report.zeros;
      for (std::size_t j = 0; j < sz; ++j) {
        auto& z = trial.zeros[j];
        z = AnchoredZero::normalized(z.anchor, z.offset + t * col_scale[j] * step(j, 0));
      }
      if (!trial.strictly_descending()) continue;
      try {
        trial_residual = bethe_log_residual(trial);
      } catch (const Error&) {
        continue;
      }
      if (!trial_residual.signs_match(n)) continue;
      if (norm2(trial_residual.values) < current || halvings == 8) accepted = true;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "refine_newton: no admissible step at iteration " << report.iterations + 1
         << "; last max |log residual| = " << residual.max_abs();
      fail(ErrorKind::non_convergence, os.str());
    }
    report.zeros = std::move(trial);
    residual = std::move(trial_residual);
    ++report.iterations;
    report.residual_history.push_back(residual.max_abs());
  }
  return report;
}

ZeroSet refine_newton(const ZeroSet& zs, double tol, int max_iter) {
  return refine_newton_report(zs, tol, max_iter).zeros;
}

ZeroSet zeros_newton(int n, double x, double tol) {
  if (x < 0) return refine_newton(zeros_spectral(n, -x), tol).mirrored();
  return refine_newton(zeros_spectral(n, x), tol);
}

}  // namespace legzeros
