#include "legzeros/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/spectral.hpp"

namespace legzeros {

namespace {

void require_degree(int n, const char* where) {
  if (n < 1 || n > kMaxDegree) {
    std::ostringstream os;
    os << where << ": degree must lie in [1, " << kMaxDegree << "], got " << n;
    fail(ErrorKind::invalid_input, os.str());
  }
}

// State of the integrator: z_ℓ = anchor_ℓ + offset_ℓ with anchor_ℓ = n+1-ℓ,
// the x -> +inf limit of branch ℓ. Offsets shrink like e^{-2ℓx} and keep
// their relative precision, so z_ℓ(x+h) > z_ℓ(x) stays observable.
struct Tracker {
  int n;
  std::vector<int> anchor;

  explicit Tracker(int degree) : n(degree), anchor(degree) {
    for (int l = 1; l <= n; ++l) anchor[l - 1] = n + 1 - l;
  }

  double sub(int k, std::size_t l, const std::vector<double>& o) const {  // k - z_l
    return static_cast<double>(k - anchor[l]) - o[l];
  }
  double add(int k, std::size_t l, const std::vector<double>& o) const {  // k + z_l
    return static_cast<double>(k + anchor[l]) + o[l];
  }
  double diff(std::size_t j, std::size_t l, const std::vector<double>& o) const {  // z_j - z_l
    return static_cast<double>(anchor[j] - anchor[l]) + (o[j] - o[l]);
  }
  double sum(std::size_t j, std::size_t l, const std::vector<double>& o) const {  // z_j + z_l
    return static_cast<double>(anchor[j] + anchor[l]) + (o[j] + o[l]);
  }

  // Empty when two squared zeros collide beyond the guard.
  std::optional<std::vector<double>> velocity(const std::vector<double>& o) const {
    const auto sz = static_cast<std::size_t>(n);
    std::vector<double> f(sz);
    for (std::size_t l = 0; l < sz; ++l) {
      const double zl = anchor[l] + o[l];
      double acc = 1.0;
      for (std::size_t j = 0; j < sz; ++j) {
        const int k = static_cast<int>(j) + 1;
        acc *= sub(k, l, o) * add(k, l, o);
        if (j == l) continue;
        const double den = diff(j, l, o) * sum(j, l, o);
        if (std::abs(den) < 1e-14 * std::max(1.0, zl * zl)) return std::nullopt;
        acc /= den;
      }
      f[l] = acc;
    }
    return f;
  }

  // max_ℓ |Σ_j z_j'/(ℓ² - z_j²) - 1|. The factor ℓ² - z_j² is cancelled
  // analytically from z_j' so nothing small is divided by something small.
  double identity_defect(const std::vector<double>& o) const {
    const auto sz = static_cast<std::size_t>(n);
    double worst = 0.0;
    for (int ell = 1; ell <= n; ++ell) {
      double total = 0.0;
      for (std::size_t j = 0; j < sz; ++j) {
        double term = 1.0;
        for (std::size_t i = 0; i < sz; ++i) {
          const int k = static_cast<int>(i) + 1;
          if (k != ell) term *= sub(k, j, o) * add(k, j, o);
          if (i != j) term /= diff(i, j, o) * sum(i, j, o);
        }
        total += term;
      }
      worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
  }

  double trace(const std::vector<double>& o) const {
    long long a = 0;
    double s = 0.0;
    for (std::size_t l = 0; l < o.size(); ++l) {
      a += anchor[l];
      s += o[l];
    }
    return static_cast<double>(a) + s;
  }

  ZeroSet zero_set(double x, const std::vector<double>& o) const {
    ZeroSet zs{n, x, {}};
    for (std::size_t l = 0; l < o.size(); ++l)
      zs.zeros.push_back(AnchoredZero::normalized(anchor[l], o[l]));
    return zs;
  }
};

// Dormand–Prince 5(4) tableau.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights minus embedded fourth-order weights.
constexpr std::array<double, 7> kE{71.0 / 57600,      0.0,           -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

using State = std::vector<double>;

struct StepResult {
  State next;
  double error = 0.0;  // max-norm of the embedded error estimate
};

// One Dormand–Prince step of y' = rhs(y); empty if rhs fails at any stage.
template <class Rhs>
std::optional<StepResult> dp_step(const Rhs& rhs, const State& y, double h) {
  const std::size_t sz = y.size();
  std::array<State, 7> k;
  auto first = rhs(y);
  if (!first) return std::nullopt;
  k[0] = std::move(*first);
  State stage(sz);
  for (std::size_t s = 1; s < 7; ++s) {
    for (std::size_t i = 0; i < sz; ++i) {
      double acc = 0.0;
      for (std::size_t r = 0; r < s; ++r) acc += kA[s][r] * k[r][i];
      stage[i] = y[i] + h * acc;
    }
    auto ks = rhs(stage);
    if (!ks) return std::nullopt;
    k[s] = std::move(*ks);
  }
  StepResult out{stage, 0.0};  // stage 7 is evaluated at the fifth-order solution
  for (std::size_t i = 0; i < sz; ++i) {
    double e = 0.0;
    for (std::size_t s = 0; s < 7; ++s) e += kE[s] * k[s][i];
    out.error = std::max(out.error, std::abs(h * e));
  }
  return out;
}

// Smallest |z_j + z_ℓ| over pairs. The first-order right-hand side is 0/0
// where it vanishes (z_a = k together with z_b = -k), which happens at x = 0
// and at isolated interior points.
double pair_gap(const Tracker& tr, const State& o) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < o.size(); ++j)
    for (std::size_t l = j + 1; l < o.size(); ++l) gap = std::min(gap, std::abs(tr.sum(j, l, o)));
  return gap;
}

bool crosses_pair(const Tracker& tr, const State& from, const State& to) {
  for (std::size_t j = 0; j < from.size(); ++j)
    for (std::size_t l = j + 1; l < from.size(); ++l)
      if ((tr.sum(j, l, from) < 0) != (tr.sum(j, l, to) < 0)) return true;
  return false;
}

// Second-order form on y = (offsets, z'): z'' = -2 z z' + Σ_{j≠ℓ} 2 z_ℓ' z_j' / (z_ℓ - z_j).
// Regular wherever the zeros are distinct.
std::optional<State> rs_rhs(const Tracker& tr, const State& y) {
  const auto sz = static_cast<std::size_t>(tr.n);
  const State o(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(sz));
  State f(2 * sz);
  for (std::size_t l = 0; l < sz; ++l) {
    const double vl = y[sz + l];
    f[l] = vl;
    double acc = -2.0 * (tr.anchor[l] + o[l]) * vl;
    for (std::size_t j = 0; j < sz; ++j) {
      if (j == l) continue;
      const double d = tr.diff(l, j, o);
      if (d == 0.0) return std::nullopt;
      acc += 2.0 * vl * y[sz + j] / d;
    }
    f[sz + l] = acc;
  }
  return f;
}

}  // namespace

InitialData initial_conditions(int n) {
  require_degree(n, "initial_conditions");
  InitialData out;
  for (int l = 1; l <= n; ++l) {
    const int a = n + 1 - 2 * l;
    long double num = -1.0L;
    for (int j = 1; j <= n; ++j)
      if (j != std::abs(a)) num *= static_cast<long double>(a * a - j * j);
    long double den = std::ldexp(1.0L, n - 1);
    for (int j = 1; j <= n; ++j)
      if (j != l && j != n + 1 - l) den *= 2.0L * (l - j) * (l - j);
    out.zeros.push_back(a);
    out.slopes.push_back(static_cast<double>(num / den));
  }
  return out;
}

std::vector<double> dubrovin_velocity(const ZeroSet& zs) {
  require_degree(zs.n, "dubrovin_velocity");
  if (zs.zeros.size() != static_cast<std::size_t>(zs.n))
    fail(ErrorKind::invalid_input, "dubrovin_velocity: zero count differs from n");
  Tracker tr(zs.n);
  std::vector<double> o;
  for (std::size_t l = 0; l < zs.zeros.size(); ++l)
    o.push_back(static_cast<double>(zs.zeros[l].anchor - tr.anchor[l]) + zs.zeros[l].offset);
  auto f = tr.velocity(o);
  if (!f) fail(ErrorKind::stiffness, "dubrovin_velocity: squared zeros collide");
  return *f;
}

OdeReport integrate_path(int n, std::span<const double> xs, double tol) {
  require_degree(n, "integrate_path");
  if (!(tol >= 1e-12 && tol <= 1e-4))
    fail(ErrorKind::invalid_input, "integrate_path: tol must lie in [1e-12, 1e-4]");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 0.0) || (i > 0 && xs[i] < xs[i - 1]))
      fail(ErrorKind::invalid_input, "integrate_path: grid must be non-negative and ascending");
    if (xs[i] > kMaxTrackedX) {
      std::ostringstream os;
      os << "integrate_path: x = " << xs[i] << " exceeds " << kMaxTrackedX
         << "; the zeros are within 1e-40 of their integer limits there";
      fail(ErrorKind::range, os.str());
    }
  }

  const Tracker tr(n);
  const auto sz = static_cast<std::size_t>(n);
  const double half_n1 = 0.5 * n * (n + 1);
  OdeReport report;
  report.states.reserve(xs.size());

  const auto init = initial_conditions(n);
  State o(sz);
  for (std::size_t l = 0; l < sz; ++l) o[l] = -static_cast<double>(l + 1);
  // Near a 0/0 point the velocities are carried as state (second-order form);
  // elsewhere they are recomputed from the zeros (first-order form).
  State v;
  if (pair_gap(tr, o) < kEnterSecondOrder) v = init.slopes;

  auto rhs_first = [&tr](const State& y) { return tr.velocity(y); };
  auto rhs_second = [&tr](const State& y) { return rs_rhs(tr, y); };

  // Offsets relax at rates up to 2n; beyond h = 1/n the explicit pair would
  // leave its stability region while the absolute error estimate, scaled by
  // the tiny offsets, stays quiet.
  const double h_max = 1.0 / n;
  double x = 0.0;
  double h = kInitialStep;
  std::size_t next = 0;
  while (next < xs.size()) {
    const double target = xs[next];
    if (x >= target) {
      report.states.push_back(tr.zero_set(target, o));
      ++next;
      continue;
    }
    const bool second = !v.empty();
    const bool hits_target = x + h >= target;
    const double step = hits_target ? target - x : h;
    if (step < kStepFloor && !hits_target) {
      std::ostringstream os;
      os << "integrate_path: step size fell below " << kStepFloor << " at x = " << x;
      fail(ErrorKind::stiffness, os.str());
    }

    std::optional<StepResult> trial;
    if (second) {
      State y = o;
      y.insert(y.end(), v.begin(), v.end());
      trial = dp_step(rhs_second, y, step);
    } else {
      trial = dp_step(rhs_first, o, step);
    }
    double ratio;  // error relative to the allowance tol·step
    if (!trial || !std::all_of(trial->next.begin(), trial->next.end(),
                               [](double y) { return std::isfinite(y); })) {
      ratio = 1e3;
    } else {
      ratio = trial->error / (tol * step);
      // A first-order step must neither run deep into a 0/0 neighbourhood
      // nor jump across one.
      if (!second && ratio <= 1.0 &&
          (pair_gap(tr, trial->next) < 0.5 * kEnterSecondOrder || crosses_pair(tr, o, trial->next)))
        ratio = 2.0;
    }

    if (ratio <= 1.0) {
      State next_o(trial->next.begin(), trial->next.begin() + static_cast<std::ptrdiff_t>(sz));
      // Offsets decay like e^{-2(n+1-ℓ)x}; once one leaves the normal double
      // range its increments are no longer representable.
      for (std::size_t l = 0; l < sz; ++l)
        if (std::abs(o[l]) >= std::numeric_limits<double>::min() && !(next_o[l] > o[l]))
          report.monotone = false;
      o = std::move(next_o);
      x = hits_target ? target : x + step;
      ++report.accepted_steps;
      report.max_trace_drift =
          std::max(report.max_trace_drift, std::abs(tr.trace(o) - half_n1 * std::tanh(x)));
      const double gap = pair_gap(tr, o);
      if (second) {
        v.assign(trial->next.begin() + static_cast<std::ptrdiff_t>(sz), trial->next.end());
        if (gap > kLeaveSecondOrder) v.clear();
      } else {
        report.max_identity_defect = std::max(report.max_identity_defect, tr.identity_defect(o));
        if (gap < kEnterSecondOrder) {
          auto f = tr.velocity(o);
          if (!f) fail(ErrorKind::stiffness, "integrate_path: squared zeros collide");
          v = std::move(*f);
        }
      }
    } else {
      ++report.rejected_steps;
    }
    // Error scales like step^5 against an allowance linear in step.
    const double factor =
        ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.25), 0.2, 5.0);
    if (ratio <= 1.0 && hits_target) {
      h = std::max(h, step * factor);  // keep the pre-clip step after landing on a grid point
    } else {
      h = step * factor;
    }
    h = std::min(h, h_max);
    if (h < kStepFloor) {
      std::ostringstream os;
      os << "integrate_path: step size fell below " << kStepFloor << " at x = " << x;
      fail(ErrorKind::stiffness, os.str());
    }
  }
  return report;
}

ZeroSet integrate_to(int n, double x_target, double tol) {
  if (!std::isfinite(x_target)) fail(ErrorKind::invalid_input, "integrate_to: x must be finite");
  const double ax = std::abs(x_target);
  const std::array<double, 1> grid{ax};
  auto zs = integrate_path(n, grid, tol).states.front();
  return x_target < 0 ? zs.mirrored() : zs;
}

std::vector<double> rs_residual(int n, double x, double h) {
  if (!(h > 0) || !(x > 2 * h))
    fail(ErrorKind::invalid_input, "rs_residual: requires x > 2h > 0");
  const auto zm = zeros_spectral(n, x - h);
  const auto z0 = zeros_spectral(n, x);
  const auto zp = zeros_spectral(n, x + h);
  const auto sz = static_cast<std::size_t>(n);
  std::vector<double> d1(sz);
  std::vector<double> d2(sz);
  for (std::size_t l = 0; l < sz; ++l) {
    d1[l] = difference(zp.zeros[l], zm.zeros[l]) / (2 * h);
    d2[l] = (difference(zp.zeros[l], z0.zeros[l]) - difference(z0.zeros[l], zm.zeros[l])) / (h * h);
  }
  std::vector<double> out(sz);
  for (std::size_t l = 0; l < sz; ++l) {
    double rhs = 0.0;
    for (std::size_t j = 0; j < sz; ++j)
      if (j != l) rhs += 2.0 * d1[l] * d1[j] / difference(z0.zeros[l], z0.zeros[j]);
    out[l] = d2[l] + 2.0 * z0.value(l) * d1[l] - rhs;
  }
  return out;
}

}  // namespace legzeros
