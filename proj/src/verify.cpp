#include "legzeros/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "legzeros/bethe.hpp"
#include "legzeros/dynamics.hpp"
#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/numkit.hpp"
#include "legzeros/spectral.hpp"
#include "legzeros/trajectory.hpp"

namespace legzeros {

namespace {

// Worst observed value against its bound; NaN never passes.
struct Measure {
  double worst = 0.0;
  double bound = 0.0;

  void see(double v) { worst = std::isnan(v) || std::isnan(worst) ? NAN : std::max(worst, v); }
  bool ok() const { return worst <= bound; }
  std::string text() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst %.3g, bound %.3g", worst, bound);
    return buf;
  }
};

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome from(const Measure& m) { return {m.ok(), m.text()}; }

class Runner {
 public:
  explicit Runner(VerifyReport& r) : report_(r) {}

  void check(const char* suite, const char* name, const std::function<Outcome()>& body) {
    CheckResult c{suite, name, false, {}};
    try {
      auto out = body();
      c.passed = out.passed;
      c.detail = std::move(out.detail);
    } catch (const Error& e) {
      c.detail = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    report_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& report_;
};

std::vector<double> grid(double a, double b, int count) { return uniform_grid(a, b, count); }

double power_sum_defect(const Matrix& z, const std::vector<double>& lambdas) {
  // tr(Z^k) against Σ λ^k for k = 1..n; equal power sums mean equal spectra.
  const auto n = z.rows();
  Matrix p = Matrix::identity(n);
  double worst = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    p = p * z;
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += p(i, i);
    double sum = 0.0;
    double scale = 0.0;
    for (double l : lambdas) {
      sum += std::pow(l, static_cast<double>(k));
      scale += std::pow(std::abs(l), static_cast<double>(k));
    }
    worst = std::max(worst, std::abs(tr - sum) / std::max(scale, 1.0));
  }
  return worst;
}

void numkit_suite(Runner& run, int n_max) {
  run.check("numkit", "eigenvalue sum equals trace", [&] {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Measure m{0, 1e-12};
    for (int n = 1; n <= std::max(n_max, 2); ++n)
      for (int rep = 0; rep < 5; ++rep) {
        const auto sz = static_cast<std::size_t>(n);
        Matrix a(sz, sz);
        for (std::size_t i = 0; i < sz; ++i)
          for (std::size_t j = i; j < sz; ++j) a(i, j) = a(j, i) = d(rng);
        double tr = 0.0;
        for (std::size_t i = 0; i < sz; ++i) tr += a(i, i);
        double sum = 0.0;
        for (double v : sym_eigenvalues(a).values) sum += v;
        m.see(std::abs(sum - tr) / std::max(1.0, a.frobenius_norm()));
      }
    return from(m);
  });
  run.check("numkit", "Z and S share a spectrum", [&] {
    Measure m{0, 1e-10};
    for (int n = 1; n <= n_max; ++n)
      for (double x : {0.1, 0.5, 1.0, 2.0}) {
        const auto b = build_bundle(n, x);
        m.see(power_sum_defect(b.Z, zeros_spectral(n, x).values()));
      }
    return from(m);
  });
  run.check("numkit", "solve_linear reproduces the right-hand side", [&] {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Measure m{0, 1e-10};
    auto residual = [&](const Matrix& a, const Matrix& b) {
      const Matrix x = solve_linear(a, b);
      return (a * x - b).frobenius_norm() / (a.frobenius_norm() * x.frobenius_norm());
    };
    for (int n = 1; n <= n_max; ++n) {
      const auto sz = static_cast<std::size_t>(n);
      Matrix a(sz, sz);
      Matrix b(sz, 2);
      for (auto& v : a.data()) v = d(rng);
      for (auto& v : b.data()) v = d(rng);
      for (std::size_t i = 0; i < sz; ++i) a(i, i) += n;
      m.see(residual(a, b));
      // I + Ñ at x = 0 is the worst conditioned matrix of the spectral route.
      Matrix c = build_bundle(n, 0.0).Ntilde;
      for (std::size_t i = 0; i < sz; ++i) c(i, i) += 1.0;
      m.see(residual(c, b));
    }
    return from(m);
  });
}

void legendre_suite(Runner& run, int n_max) {
  run.check("legendre_core", "Schrodinger equation residual", [&] {
    Measure m{0, 1.0};  // residual / (1e-5·(1+|ψ|)·max(1,z²))
    for (int n = 1; n <= std::min(6, n_max); ++n)
      for (double x : {-2.0, -0.5, 0.3, 1.7})
        for (double z : {0.25, -0.7, 2.5}) {
          const LegendreParams p{n, x, z};
          const double bound = 1e-5 * (1 + std::abs(eval_psi(p))) * std::max(1.0, z * z);
          m.see(schrodinger_residual(p, 1e-4) / bound);
        }
    return from(m);
  });
  run.check("legendre_core", "factorization over the zeros", [&] {
    Measure m{0, 1e-9};
    for (int n = 1; n <= n_max; ++n)
      for (double x : {-2.0, -0.5, 0.3, 1.7})
        for (double z : {0.25, -0.7, 2.5, n + 0.5}) {
          double lhs = eval_psi({n, x, z});
          double rhs = std::exp(z * x);
          for (int j = 1; j <= n; ++j) lhs *= z - j;
          for (double zj : zeros_spectral(n, x).values()) rhs *= z - zj;
          m.see(std::abs(lhs - rhs) / std::abs(rhs));
        }
    return from(m);
  });
  run.check("legendre_core", "characteristic polynomial vanishes at the zeros", [&] {
    Measure m{0, 1.0};  // |p(z_j)| / (1e-9·(1+u)^n·n^n)
    for (int n = 1; n <= n_max; ++n)
      for (double x : grid(0, 6, 25)) {
        const auto p = charpoly_at(n, x);
        const double bound = 1e-9 * std::pow(1 + p.u, n) * std::pow(n, n);
        for (double z : zeros_spectral(n, x).values()) m.see(std::abs(p(z)) / bound);
      }
    return from(m);
  });
  run.check("legendre_core", "sub-leading coefficient gives the trace", [&] {
    Measure m{0, 1e-12};
    for (int n = 1; n <= n_max; ++n)
      for (double x : grid(0, 6, 25)) {
        const auto p = charpoly_at(n, x);
        const auto sz = static_cast<std::size_t>(n);
        const double half = 0.5 * n * (n + 1);
        m.see(std::abs(-p.coeffs[sz - 1] / p.coeffs[sz] - half * std::tanh(x)) / half);
      }
    return from(m);
  });
  run.check("legendre_core", "normalization constants agree for n <= 30", [&] {
    for (int n = 1; n <= kMaxDegree; ++n) norm_constants(n);  // throws on disagreement
    return Outcome{true, "both closed forms equal as integers, n = 1..30"};
  });
  run.check("legendre_core", "bound state norm for n = 2, j = 1", [&] {
    Measure m{0, 1e-6};
    m.see(std::abs(bound_state_norm_integral(2, 1, -20, 20, 1e-3) - 1.0 / 6));
    return from(m);
  });
}

void spectral_suite(Runner& run, int n_max) {
  run.check("spectral", "zeros are real and simple", [&] {
    double gap = std::numeric_limits<double>::infinity();
    bool ordered = true;
    for (int n = 2; n <= n_max; ++n)
      for (double x : grid(0, 8, 400)) {
        const auto zs = zeros_spectral(n, x);
        ordered = ordered && zs.strictly_descending();
        gap = std::min(gap, zs.min_gap());
      }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s, min gap %.3g, bound 1e-08",
                  ordered ? "descending" : "ORDER BROKEN", gap);
    return Outcome{ordered && gap > 1e-8, buf};
  });
  run.check("spectral", "trace identity", [&] {
    Measure m{0, 1e-10};
    for (int n = 1; n <= n_max; ++n)
      for (double x : grid(-8, 8, 161)) {
        const double half = 0.5 * n * (n + 1);
        m.see(std::abs(zeros_spectral(n, x).sum() - half * std::tanh(x)) / half);
      }
    return from(m);
  });
  run.check("spectral", "integer limits at x = 9", [&] {
    Measure m{0, 1e-5};
    for (int n = 1; n <= n_max; ++n) {
      const auto zs = zeros_spectral(n, 9.0);
      for (int l = 1; l <= n; ++l)
        m.see(std::abs(zs.zeros[static_cast<std::size_t>(l - 1)].distance_from(n + 1 - l)));
    }
    return from(m);
  });
  run.check("spectral", "branch l stays inside (-l, n+1-l)", [&] {
    bool inside = true;
    for (int n = 1; n <= n_max; ++n)
      for (double x : grid(-8, 8, 161)) {
        const auto zs = zeros_spectral(n, x);
        for (int l = 1; l <= n; ++l) {
          const auto& z = zs.zeros[static_cast<std::size_t>(l - 1)];
          inside = inside && z.distance_from(-l) < 0 && z.distance_from(n + 1 - l) > 0;
        }
      }
    return Outcome{inside, inside ? "all branches inside" : "a branch left its range"};
  });
  run.check("spectral", "antisymmetry on the directly computable overlap", [&] {
    // Direct evaluation at -x is trusted while the largest entry of Ñ(-x),
    // ν_n e^{2nx}/(2n), stays below 1e6.
    Measure m{0, 1e-10};
    int points = 0;
    for (int n = 1; n <= n_max; ++n)
      for (double x : {0.05, 0.1, 0.25, 0.5, 1.0}) {
        if (norm_constants(n).value(n) * std::exp(2.0 * n * x) / (2.0 * n) > 1e6) continue;
        const auto neg = zeros_spectral_direct(n, -x);
        const auto pos = zeros_spectral_direct(n, x).mirrored();
        for (std::size_t l = 0; l < neg.zeros.size(); ++l)
          m.see(std::abs(difference(neg.zeros[l], pos.zeros[l])));
        ++points;
      }
    return Outcome{m.ok(), m.text() + " over " + std::to_string(points) + " (n, x) pairs"};
  });
}

void bethe_suite(Runner& run, int n_max) {
  const int top = std::min(10, n_max);
  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(6.0 * i / 100);
  constexpr double tol = 1e-10;

  run.check("bethe", "Newton fixed point satisfies the product form", [&] {
    Measure m{0, 1.0};  // |residual| / (tol·(1 + e^{-2x}))
    for (int n = 1; n <= top; ++n)
      for (double x : xs) {
        const auto zs = refine_newton(zeros_spectral(n, x), tol);
        for (double r : bethe_residual(zs).values)
          m.see(std::abs(r) / (tol * (1 + std::exp(-2 * x))));
      }
    return from(m);
  });
  run.check("bethe", "Newton barely moves spectral zeros", [&] {
    Measure m{0, 1e-8};
    for (int n = 1; n <= top; ++n)
      for (double x : xs) {
        const auto seed = zeros_spectral(n, x);
        const auto zs = refine_newton(seed, tol);
        for (std::size_t l = 0; l < zs.zeros.size(); ++l)
          m.see(std::abs(difference(zs.zeros[l], seed.zeros[l])));
      }
    return from(m);
  });
  run.check("bethe", "sign pattern at converged solutions", [&] {
    bool ok = true;
    for (int n = 1; n <= top; ++n)
      for (double x : xs) ok = ok && bethe_log_residual(zeros_newton(n, x, tol)).signs_match(n);
    return Outcome{ok, ok ? "(-1)^(n-l) everywhere" : "sign pattern violated"};
  });
  if (n_max >= 2)
    run.check("bethe", "quadratic convergence for n = 2", [&] {
      Measure m{0, kNewtonQuadraticBound};
      const auto seed = ZeroSet::from_values(2, 0.5 * std::log(2.0), std::vector{1.4, -0.5});
      const auto hist = refine_newton_report(seed, 1e-15).residual_history;
      for (std::size_t k = 0; k + 1 < hist.size(); ++k)
        if (hist[k] > 1e-7) m.see(hist[k + 1] / (hist[k] * hist[k]));
      return from(m);
    });
}

void dynamics_suite(Runner& run, int n_max) {
  run.check("dynamics", "initial slopes match finite differences", [&] {
    Measure m{0, 1e-6};
    for (int n = 1; n <= n_max; ++n) {
      const auto init = initial_conditions(n);
      const auto zp = zeros_spectral(n, 1e-4);
      const auto zm = zeros_spectral(n, -1e-4);
      for (std::size_t l = 0; l < init.slopes.size(); ++l) {
        const double fd = difference(zp.zeros[l], zm.zeros[l]) / 2e-4;
        m.see(std::abs(fd - init.slopes[l]) / std::max(1.0, std::abs(init.slopes[l])));
      }
    }
    return from(m);
  });

  constexpr double tol = 1e-9;
  const double xs[] = {0.25, 1.0, 3.0, 6.0};
  std::vector<OdeReport> runs;
  for (int n = 1; n <= n_max; ++n) {
    try {
      runs.push_back(integrate_path(n, xs, tol));
    } catch (const Error&) {
      runs.clear();
      break;
    }
  }
  auto need_runs = [&] {
    if (runs.empty()) integrate_path(1, xs, tol);  // rethrows the failure for the report
  };
  run.check("dynamics", "trace conserved within 10 tol", [&] {
    need_runs();
    Measure m{0, 10 * tol};
    for (const auto& r : runs) m.see(r.max_trace_drift);
    return from(m);
  });
  run.check("dynamics", "linear identity along the flow", [&] {
    need_runs();
    Measure m{0, 1e-9};
    for (const auto& r : runs) m.see(r.max_identity_defect);
    return from(m);
  });
  run.check("dynamics", "endpoints agree with spectral", [&] {
    need_runs();
    Measure m{0, 1e-6};
    for (int n = 1; n <= std::min(8, n_max); ++n)
      for (std::size_t i = 0; i < 4; ++i) {
        const auto ref = zeros_spectral(n, xs[i]);
        const auto& got = runs[static_cast<std::size_t>(n - 1)].states[i];
        for (std::size_t l = 0; l < ref.zeros.size(); ++l)
          m.see(std::abs(difference(got.zeros[l], ref.zeros[l])));
      }
    return from(m);
  });
  run.check("dynamics", "every accepted step increases every zero", [&] {
    need_runs();
    bool ok = std::all_of(runs.begin(), runs.end(), [](const OdeReport& r) { return r.monotone; });
    return Outcome{ok, ok ? "strictly increasing" : "a branch failed to increase"};
  });
  run.check("dynamics", "second-order system residual", [&] {
    Measure m{0, 1e-4};
    for (int n : {1, 2, 3, 5})
      if (n <= n_max)
        for (double x : {0.5, 1.0, 2.0})
          for (double r : rs_residual(n, x, 1e-4)) m.see(std::abs(r));
    return from(m);
  });
}

void trajectory_suite(Runner& run, int n_max) {
  run.check("trajectory_io", "table properties on [-8, 8]", [&] {
    std::string bad;
    for (int n = 1; n <= n_max; ++n) {
      const auto c = check_table(sample(n, -8, 8, 401, Method::spectral, kDefaultEigenTol));
      if (!c.ok()) bad += " n=" + std::to_string(n);
    }
    return Outcome{bad.empty(), bad.empty() ? "ordered, monotone, limits reached" : "failed:" + bad};
  });
  run.check("trajectory_io", "methods agree on [-6, 6]", [&] {
    Measure newton{0, 1e-8};
    Measure ode{0, 1e-5};
    for (int n = 1; n <= std::min(8, n_max); ++n) {
      const auto s = sample(n, -6, 6, 241, Method::spectral, kDefaultEigenTol);
      newton.see(max_table_difference(s, sample(n, -6, 6, 241, Method::newton, 1e-12)));
      ode.see(max_table_difference(s, sample(n, -6, 6, 241, Method::ode, 1e-9)));
    }
    return Outcome{newton.ok() && ode.ok(), "newton " + newton.text() + "; ode " + ode.text()};
  });
  run.check("trajectory_io", "CSV and JSON round trips are exact", [&] {
    bool ok = true;
    for (int n = 1; n <= n_max; ++n) {
      const auto t = sample(n, -3, 3, 25, Method::spectral, kDefaultEigenTol);
      std::stringstream csv;
      std::stringstream json;
      write_csv(t, csv);
      write_json(t, json);
      ok = ok && same_values(read_csv(csv, t.method), t) && same_values(read_json(json), t);
    }
    return Outcome{ok, ok ? "bit-identical" : "a value changed"};
  });
}

}  // namespace

bool VerifyReport::passed() const noexcept { return failures() == 0; }

int VerifyReport::failures() const noexcept {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

VerifyReport run_verification(int n_max) {
  if (n_max < 1 || n_max > kMaxVerifyDegree) {
    std::ostringstream os;
    os << "verify: n_max must lie in [1, " << kMaxVerifyDegree << "], got " << n_max;
    fail(ErrorKind::invalid_input, os.str());
  }
  VerifyReport report;
  report.n_max = n_max;
  Runner run(report);
  numkit_suite(run, n_max);
  legendre_suite(run, n_max);
  spectral_suite(run, n_max);
  bethe_suite(run, n_max);
  dynamics_suite(run, n_max);
  trajectory_suite(run, n_max);
  return report;
}

}  // namespace legzeros
