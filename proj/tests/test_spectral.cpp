#include <doctest.h>

#include <cmath>

#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/spectral.hpp"

using namespace legzeros;

namespace {

// Roots of z² - 3 tanh(x) z + (2 - 8u + 2u²)/(1+u)², u = e^{-2x}.
std::pair<double, double> n2_roots(double x) {
  const double u = std::exp(-2 * x);
  const double s = 3 * std::tanh(x);
  const double p = (2 - 8 * u + 2 * u * u) / ((1 + u) * (1 + u));
  const double d = std::sqrt(s * s - 4 * p);
  return {(s + d) / 2, (s - d) / 2};
}

}  // namespace

TEST_CASE("bundle: n = 1 scalars") {
  for (double x : {-1.0, 0.0, 0.5, 3.0}) {
    const auto b = build_bundle(1, x);
    CHECK(b.N(0, 0) == 1.0);
    CHECK(b.Z(0, 0) == doctest::Approx(std::tanh(x)).epsilon(1e-15));
    CHECK(b.Ntilde(0, 0) == doctest::Approx(std::exp(-2 * x)).epsilon(1e-15));
    CHECK(b.S(0, 0) == doctest::Approx(std::tanh(x)).epsilon(1e-15));
  }
}

TEST_CASE("bundle: structure") {
  for (int n = 1; n <= 12; ++n)
    for (double x : {0.0, 0.4, 2.0}) {
      const auto b = build_bundle(n, x);
      const auto nu = norm_constants(n);
      double trace = 0.0;
      for (std::size_t j = 0; j < b.Z.rows(); ++j) {
        trace += b.Z(j, j);
        CHECK(b.K(j, j) == static_cast<double>(j + 1));
        CHECK(b.E(j, j) == doctest::Approx(std::exp(-2.0 * (j + 1) * x)));
        for (std::size_t k = 0; k < b.Z.cols(); ++k) {
          CHECK(b.S(j, k) == b.S(k, j));
          CHECK(b.N(j, k) == doctest::Approx(nu.value(static_cast<int>(j) + 1) /
                                             static_cast<double>(j + k + 2)));
        }
      }
      CHECK(b.symmetry_defect <= 1e-11);
      CHECK(trace == doctest::Approx(0.5 * n * (n + 1) * std::tanh(x)).scale(n * n));
    }
}

TEST_CASE("bundle: range error below x_min") {
  try {
    build_bundle(10, -40.0);
    FAIL("expected range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::range);
  }
  CHECK(bundle_x_min(10) < -30.0);
  CHECK_NOTHROW(build_bundle(3, -1.0));
  // Far on the negative side I + Ñ is singular to working precision.
  try {
    build_bundle(10, -1.0);
    FAIL("expected singular matrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::singular_matrix);
  }
}

TEST_CASE("zeros at x = 0 are n+1-2l") {
  for (int n = 1; n <= 12; ++n) {
    const auto zs = zeros_spectral(n, 0.0);
    for (int l = 1; l <= n; ++l)
      CHECK(std::abs(zs.value(static_cast<std::size_t>(l - 1)) - (n + 1 - 2 * l)) <= 1e-10);
  }
  CHECK(zeros_spectral(2, 0.0).values() == std::vector<double>{1.0, -1.0});
}

TEST_CASE("closed forms n = 1 and n = 2") {
  for (double x : {-4.0, -1.0, 0.2, 1.0, 5.0})
    CHECK(zeros_spectral(1, x).value(0) == doctest::Approx(std::tanh(x)).epsilon(1e-12));
  const auto zs = zeros_spectral(2, 0.5 * std::log(2.0));
  CHECK(zs.value(0) == doctest::Approx(0.5 + std::sqrt(11.0 / 3) / 2).epsilon(1e-13));
  CHECK(zs.value(1) == doctest::Approx(0.5 - std::sqrt(11.0 / 3) / 2).epsilon(1e-13));
  for (double x : {-3.0, 0.05, 0.9, 2.5}) {
    const auto [a, b] = n2_roots(x);
    const auto got = zeros_spectral(2, x);
    CHECK(got.value(0) == doctest::Approx(a).epsilon(1e-12));
    CHECK(got.value(1) == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("high-precision reference zeros") {
  struct Ref {
    int n;
    double x;
    int l, anchor;
    double offset;
  };
  const Ref refs[] = {
      {3, 0.8, 1, 3, -0.11004214673356107112},  {3, 0.8, 2, 1, 0.46775809920251012142},
      {3, 0.8, 3, 0, -0.37349533086185511923},  {5, 0.5, 3, 2, -0.38874254800669052303},
      {5, 0.5, 5, -3, 0.49410822936411593501},  {5, 2.0, 1, 5, -2.0676141475940765942e-6},
      {5, 2.0, 5, 1, -0.45133540913080751354},  {8, 1.0, 1, 8, -0.0010900329478526531643},
      {8, 1.0, 8, -3, 0.39222512490817504153},
  };
  for (const auto& r : refs) {
    CAPTURE(r.n);
    CAPTURE(r.l);
    const auto z = zeros_spectral(r.n, r.x).zeros[static_cast<std::size_t>(r.l - 1)];
    CHECK(z.anchor == r.anchor);
    CHECK(std::abs(z.offset - r.offset) <= 1e-13);
  }
}

TEST_CASE("offsets keep relative accuracy at large x") {
  // n = 10, x = 6: z_l - (11 - l) spans 1e-46 .. 1e-3.
  const double offsets[] = {-1.4164505754054897034e-46, -1.0373874186934547452e-40,
                            -3.1990067489311105041e-35, -5.3992338855997382653e-30,
                            -5.427393063736254776e-25,  -3.31233809914933888e-20,
                            -1.1979030790908703558e-15, -2.3869703188406434102e-11,
                            -2.2404110718376464052e-7,  -0.00067563514126553407156};
  const auto zs = zeros_spectral(10, 6.0);
  for (int l = 1; l <= 10; ++l) {
    const auto& z = zs.zeros[static_cast<std::size_t>(l - 1)];
    CAPTURE(l);
    CHECK(z.anchor == 11 - l);
    CHECK(z.offset == doctest::Approx(offsets[l - 1]).epsilon(1e-10));
  }
}

TEST_CASE("mirror reduction is exact") {
  for (int n = 1; n <= 12; ++n)
    for (double x : {0.3, 2.0, 7.5, 30.0}) {
      const auto neg = zeros_spectral(n, -x);
      const auto pos = zeros_spectral(n, x);
      CHECK(neg == pos.mirrored());
      CHECK(neg.x == -x);
    }
}

TEST_CASE("antisymmetry where both signs are directly computable") {
  for (int n = 1; n <= 8; ++n)
    for (double x : {0.1, 0.25, 0.5}) {
      const auto neg = zeros_spectral_direct(n, -x);
      const auto pos = zeros_spectral_direct(n, x).mirrored();
      for (std::size_t l = 0; l < neg.zeros.size(); ++l)
        CHECK(std::abs(difference(neg.zeros[l], pos.zeros[l])) <= 1e-10);
    }
}

TEST_CASE("zeros are simple, ordered, inside their branch range") {
  for (int n = 2; n <= 12; ++n)
    for (int i = 0; i < 400; ++i) {
      const double x = 8.0 * i / 399;
      const auto zs = zeros_spectral(n, x);
      REQUIRE(zs.strictly_descending());
      CHECK(zs.min_gap() > 1e-8);
      for (int l = 1; l <= n; ++l) {
        const auto& z = zs.zeros[static_cast<std::size_t>(l - 1)];
        CHECK(z.distance_from(-l) < 0);
        CHECK(z.distance_from(n + 1 - l) > 0);
      }
    }
}

TEST_CASE("trace identity and limits") {
  for (int n = 1; n <= 12; ++n) {
    for (double x : {-6.0, -1.0, 0.0, 0.01, 1.0, 6.0}) {
      const double half = 0.5 * n * (n + 1);
      CHECK(std::abs(zeros_spectral(n, x).sum() - half * std::tanh(x)) <= 1e-10 * half);
    }
    const auto far = zeros_spectral(n, 9.0);
    for (int l = 1; l <= n; ++l)
      CHECK(std::abs(far.zeros[static_cast<std::size_t>(l - 1)].distance_from(n + 1 - l)) <= 1e-5);
  }
}

TEST_CASE("eigenvalues satisfy the exact characteristic polynomial") {
  for (double x : {-3.0, 0.0, 1.0, 4.0}) CHECK(eigen_consistency(1, x) <= 1e-14);
  CHECK(eigen_consistency(5, 0.7) <= 1e-9);
  CHECK(eigen_consistency(10, 2.0) <= 1e-8);
}
