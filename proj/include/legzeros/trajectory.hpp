#pragma once

// Sampling of whole zero trajectories over an x-grid, their global
// properties, and CSV/JSON serialization.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "legzeros/zero_set.hpp"

namespace legzeros {

enum class Method { spectral, newton, ode };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct TrajectorySample {
  double x = 0.0;
  double y = 0.0;  // tanh x
  ZeroSet zeros;
};

struct TrajectoryTable {
  int n = 0;
  Method method = Method::spectral;
  std::vector<TrajectorySample> samples;
};

inline constexpr int kMaxSamples = 1'000'000;

/// Uniform grid x_i = x_min + (x_max - x_min)·i/(count-1), both endpoints
/// included exactly.
std::vector<double> uniform_grid(double x_min, double x_max, int count);

/// Zeros at one x by the chosen method. `tol` is the eigen tolerance
/// (spectral), the log-residual target (newton) or the per-unit-x local
/// error (ode).
ZeroSet zeros_by(Method method, int n, double x, double tol);

/// Pointwise methods run on a worker pool; ode integrates once through the
/// sorted |x| values and mirrors the negative ones. Numeric failures are
/// rethrown with the failing x prepended, keeping their kind.
TrajectoryTable sample(int n, double x_min, double x_max, int count, Method method,
                       double tol);

struct TableCheck {
  bool x_increasing = true;
  bool descending = true;   // every sample strictly descending
  bool monotone = true;     // every branch strictly increasing between samples
  bool endpoints = true;    // limits at |x| >= 8 within 2 e^{-2|x|} n²
  bool ok() const noexcept { return x_increasing && descending && monotone && endpoints; }
};

TableCheck check_table(const TrajectoryTable& t);

/// Largest elementwise |a - b| over matching samples; the tables must share
/// n and the grid.
double max_table_difference(const TrajectoryTable& a, const TrajectoryTable& b);

/// 17 significant digits, the form both writers use for every number.
std::string format_number(double v);

void write_csv(const TrajectoryTable& t, std::ostream& out);
void write_csv(const TrajectoryTable& t, const std::filesystem::path& path);
/// CSV carries no method column; the caller supplies it.
TrajectoryTable read_csv(std::istream& in, Method method = Method::spectral);

void write_json(const TrajectoryTable& t, std::ostream& out);
void write_json(const TrajectoryTable& t, const std::filesystem::path& path);
TrajectoryTable read_json(std::istream& in);

/// True when every number in the two tables is bit-identical.
bool same_values(const TrajectoryTable& a, const TrajectoryTable& b);

}  // namespace legzeros
