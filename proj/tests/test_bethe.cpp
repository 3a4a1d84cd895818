#include <doctest.h>

#include <cmath>

#include "legzeros/bethe.hpp"
#include "legzeros/error.hpp"
#include "legzeros/spectral.hpp"

using namespace legzeros;

namespace {

ZeroSet make(int n, double x, std::vector<double> v) { return ZeroSet::from_values(n, x, v); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("residual vanishes on closed-form zeros") {
  for (double x : {-2.0, 0.5, 3.0}) {
    const auto r = bethe_residual(make(1, x, {std::tanh(x)}));
    CHECK(std::abs(r.values[0]) <= 1e-15 * std::max(1.0, std::exp(-2 * x)));
  }
  const double x = 0.5 * std::log(2.0);
  const double d = std::sqrt(11.0 / 3) / 2;
  const auto zs = make(2, x, {0.5 + d, 0.5 - d});
  for (double v : bethe_residual(zs).values) CHECK(std::abs(v) <= 1e-14);
  const auto lr = bethe_log_residual(zs);
  CHECK(lr.max_abs() <= 1e-14);
  CHECK(lr.signs_match(2));
  CHECK(lr.signs == std::vector<int>{-1, 1});
}

TEST_CASE("residual detects a perturbed set") {
  const auto r = bethe_residual(make(2, 0.0, {1.1, -0.9}));
  CHECK(std::abs(r.values[1]) >= 0.02);
  // -1 itself is a pole of the l = 1 factor.
  CHECK(kind_of([] { bethe_residual(make(2, 0.0, {1.1, -1.0})); }) == ErrorKind::pole);
}

TEST_CASE("spectral zeros satisfy the log system") {
  for (int n = 1; n <= 12; ++n)
    for (int i = 1; i <= 60; ++i) {
      const double x = 0.1 * i;
      const auto lr = bethe_log_residual(zeros_spectral(n, x));
      CAPTURE(n);
      CAPTURE(x);
      CHECK(lr.max_abs() <= 1e-8);
      CHECK(lr.signs_match(n));
    }
}

TEST_CASE("pole in the residual") {
  CHECK(kind_of([] { bethe_residual(make(2, 0.3, {1.5, -1.0})); }) == ErrorKind::pole);
  CHECK(kind_of([] { bethe_log_residual(make(2, 0.3, {1.5, -2.0})); }) == ErrorKind::pole);
}

TEST_CASE("Newton leaves exact zeros in place") {
  const auto zs = zeros_spectral(5, 1.0);
  const auto ref = refine_newton(zs, 1e-12);
  for (std::size_t l = 0; l < 5; ++l)
    CHECK(std::abs(difference(ref.zeros[l], zs.zeros[l])) <= 1e-12);
}

TEST_CASE("Newton converges quadratically from a rough seed") {
  const double x = 0.5 * std::log(2.0);
  const auto rep = refine_newton_report(make(2, x, {1.4, -0.5}), 1e-12);
  CHECK(rep.iterations <= 5);
  CHECK(rep.residual_history.back() <= 1e-12);
  CHECK(rep.zeros.value(0) == doctest::Approx(0.5 + std::sqrt(11.0 / 3) / 2).epsilon(1e-12));
  CHECK(rep.zeros.value(1) == doctest::Approx(0.5 - std::sqrt(11.0 / 3) / 2).epsilon(1e-12));
  const auto& h = rep.residual_history;
  for (std::size_t k = 0; k + 1 < h.size(); ++k)
    if (h[k] > 1e-7) CHECK(h[k + 1] <= 1.0 * h[k] * h[k]);
}

TEST_CASE("Newton from the spectral seed") {
  for (int n = 1; n <= 10; ++n)
    for (double x : {0.05, 1.0, 4.0}) {
      const auto zs = zeros_newton(n, x, 1e-13);
      CHECK(bethe_log_residual(zs).max_abs() <= 1e-13);
      const auto sp = zeros_spectral(n, x);
      for (std::size_t l = 0; l < zs.zeros.size(); ++l)
        CHECK(std::abs(difference(zs.zeros[l], sp.zeros[l])) <= 1e-10);
    }
}

TEST_CASE("Newton at x = 0 returns the limit set") {
  for (int n = 1; n <= 8; ++n) {
    auto seed = zeros_spectral(n, 0.0);
    const auto zs = refine_newton(seed, 1e-12);
    for (int l = 1; l <= n; ++l) CHECK(zs.value(static_cast<std::size_t>(l - 1)) == n + 1 - 2 * l);
  }
}

TEST_CASE("Newton input validation") {
  CHECK(kind_of([] { refine_newton(make(2, 0.3, {1.0 + 0.5, -0.5}), 0.0); }) ==
        ErrorKind::invalid_input);
  CHECK(kind_of([] { refine_newton(make(2, 0.3, {-0.5, 1.2}), 1e-12); }) ==
        ErrorKind::invalid_input);
  CHECK(kind_of([] { refine_newton(make(2, 0.3, {2.5, -0.5}), 1e-12); }) ==
        ErrorKind::wrong_branch);
}
