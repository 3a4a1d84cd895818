#include "legzeros/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "legzeros/bethe.hpp"
#include "legzeros/dynamics.hpp"
#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/spectral.hpp"

namespace legzeros {

namespace {

[[noreturn]] void rethrow_at(double x, const Error& e) {
  fail(e.kind(), "at x = " + format_number(x) + ": " + e.what());
}

void validate(const TrajectoryTable& t, const char* where) {
  auto bad = [&](const std::string& why) {
    fail(ErrorKind::invalid_input, std::string(where) + ": " + why);
  };
  if (t.n < 1) bad("degree must be positive");
  for (const auto& s : t.samples) {
    if (s.zeros.zeros.size() != static_cast<std::size_t>(t.n))
      bad("sample at x = " + format_number(s.x) + " does not hold n zeros");
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) bad("non-finite coordinate");
    for (const auto& z : s.zeros.zeros)
      if (!std::isfinite(z.value())) bad("non-finite zero at x = " + format_number(s.x));
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, path.string() + ": " + std::strerror(errno));
  return out;
}

void finish_write(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorKind::io, path.string() + ": write failed");
}

double parse_number(std::string_view field, int line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream os;
    os << "read_csv: line " << line << ": malformed number '" << field << "'";
    fail(ErrorKind::io, os.str());
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::spectral: return "spectral";
    case Method::newton: return "newton";
    case Method::ode: return "ode";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::spectral, Method::newton, Method::ode})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

std::vector<double> uniform_grid(double x_min, double x_max, int count) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
    fail(ErrorKind::invalid_input, "uniform_grid: need finite x_min < x_max");
  if (count < 2 || count > kMaxSamples)
    fail(ErrorKind::invalid_input, "uniform_grid: count must lie in [2, 1000000]");
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double span = x_max - x_min;
  for (int i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = x_min + span * i / (count - 1);
  xs.back() = x_max;
  return xs;
}

ZeroSet zeros_by(Method method, int n, double x, double tol) {
  switch (method) {
    case Method::spectral: return zeros_spectral(n, x, tol);
    case Method::newton: return zeros_newton(n, x, tol);
    case Method::ode: return integrate_to(n, x, tol);
  }
  fail(ErrorKind::invalid_input, "zeros_by: unknown method");
}

TrajectoryTable sample(int n, double x_min, double x_max, int count, Method method, double tol) {
  if (n < 1 || n > kMaxDegree) {
    std::ostringstream os;
    os << "sample: degree must lie in [1, " << kMaxDegree << "], got " << n;
    fail(ErrorKind::invalid_input, os.str());
  }
  if (!(tol > 0)) fail(ErrorKind::invalid_input, "sample: tol must be positive");
  const auto xs = uniform_grid(x_min, x_max, count);
  const std::size_t m = xs.size();

  TrajectoryTable t{n, method, std::vector<TrajectorySample>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    t.samples[i].x = xs[i];
    t.samples[i].y = std::tanh(xs[i]);
  }

  if (method == Method::ode) {
    std::vector<double> abs_xs;
    abs_xs.reserve(m);
    for (double x : xs) abs_xs.push_back(std::abs(x));
    std::sort(abs_xs.begin(), abs_xs.end());
    abs_xs.erase(std::unique(abs_xs.begin(), abs_xs.end()), abs_xs.end());
    OdeReport report;
    try {
      report = integrate_path(n, abs_xs, tol);
    } catch (const Error& e) {
      rethrow_at(abs_xs.back(), e);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double ax = std::abs(xs[i]);
      const auto k = static_cast<std::size_t>(
          std::lower_bound(abs_xs.begin(), abs_xs.end(), ax) - abs_xs.begin());
      const auto& zs = report.states[k];
      t.samples[i].zeros = xs[i] < 0 ? zs.mirrored() : zs;
    }
    return t;
  }

  // Pointwise methods: workers pull indices; the lowest failing index wins so
  // the reported error does not depend on scheduling.
  std::vector<std::exception_ptr> errors(m);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next.fetch_add(1)) < m;) {
      try {
        t.samples[i].zeros = zeros_by(method, n, xs[i], tol);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  const auto hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(hw, m));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < m; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      rethrow_at(xs[i], e);
    }
  }
  return t;
}

TableCheck check_table(const TrajectoryTable& t) {
  TableCheck c;
  const auto n = static_cast<std::size_t>(t.n);
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const auto& s = t.samples[i];
    if (!s.zeros.strictly_descending()) c.descending = false;
    if (i == 0) continue;
    const auto& prev = t.samples[i - 1];
    if (!(s.x > prev.x)) c.x_increasing = false;
    for (std::size_t l = 0; l < n; ++l)
      if (!(difference(s.zeros.zeros[l], prev.zeros.zeros[l]) > 0)) c.monotone = false;
  }
  if (!t.samples.empty()) {
    const double n2 = static_cast<double>(t.n) * t.n;
    auto near_limits = [&](const TrajectorySample& s, bool right) {
      const double bound = 2.0 * std::exp(-2.0 * std::abs(s.x)) * n2;
      for (std::size_t l = 0; l < n; ++l) {
        const int ell = static_cast<int>(l) + 1;
        const int limit = right ? t.n + 1 - ell : -ell;
        if (!(std::abs(s.zeros.zeros[l].distance_from(limit)) <= bound)) return false;
      }
      return true;
    };
    const auto& first = t.samples.front();
    const auto& last = t.samples.back();
    if (first.x <= -8.0 && !near_limits(first, false)) c.endpoints = false;
    if (last.x >= 8.0 && !near_limits(last, true)) c.endpoints = false;
  }
  return c;
}

double max_table_difference(const TrajectoryTable& a, const TrajectoryTable& b) {
  if (a.n != b.n || a.samples.size() != b.samples.size())
    fail(ErrorKind::invalid_input, "max_table_difference: tables differ in shape");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& sa = a.samples[i];
    const auto& sb = b.samples[i];
    if (sa.x != sb.x) fail(ErrorKind::invalid_input, "max_table_difference: grids differ");
    for (std::size_t l = 0; l < sa.zeros.zeros.size(); ++l)
      worst = std::max(worst, std::abs(difference(sa.zeros.zeros[l], sb.zeros.zeros[l])));
  }
  return worst;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const TrajectoryTable& t, std::ostream& out) {
  validate(t, "write_csv");
  std::string text = "x,y";
  for (int l = 1; l <= t.n; ++l) text += ",z" + std::to_string(l);
  text += '\n';
  for (const auto& s : t.samples) {
    text += format_number(s.x);
    text += ',';
    text += format_number(s.y);
    for (const auto& z : s.zeros.zeros) {
      text += ',';
      text += format_number(z.value());
    }
    text += '\n';
  }
  out << text;
}

void write_csv(const TrajectoryTable& t, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_csv(t, out);
  finish_write(out, path);
}

TrajectoryTable read_csv(std::istream& in, Method method) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::io, "read_csv: missing header");
  const auto head = split(line, ',');
  if (head.size() < 3 || head[0] != "x" || head[1] != "y")
    fail(ErrorKind::io, "read_csv: header must be x,y,z1,...,zn");
  TrajectoryTable t;
  t.n = static_cast<int>(head.size()) - 2;
  t.method = method;
  for (int l = 1; l <= t.n; ++l)
    if (head[static_cast<std::size_t>(l) + 1] != "z" + std::to_string(l))
      fail(ErrorKind::io, "read_csv: header must be x,y,z1,...,zn");

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != head.size()) {
      std::ostringstream os;
      os << "read_csv: line " << lineno << " has " << fields.size() << " fields, expected "
         << head.size();
      fail(ErrorKind::io, os.str());
    }
    TrajectorySample s;
    s.x = parse_number(fields[0], lineno);
    s.y = parse_number(fields[1], lineno);
    std::vector<double> zs;
    for (std::size_t k = 2; k < fields.size(); ++k) zs.push_back(parse_number(fields[k], lineno));
    s.zeros = ZeroSet::from_values(t.n, s.x, zs);
    t.samples.push_back(std::move(s));
  }
  return t;
}

void write_json(const TrajectoryTable& t, std::ostream& out) {
  validate(t, "write_json");
  if (t.samples.empty()) fail(ErrorKind::invalid_input, "write_json: table has no samples");
  std::string text = "{\"n\":" + std::to_string(t.n) + ",\"method\":\"";
  text += to_string(t.method);
  text += "\",\"samples\":[";
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const auto& s = t.samples[i];
    if (i) text += ',';
    text += "{\"x\":" + format_number(s.x) + ",\"y\":" + format_number(s.y) + ",\"zeros\":[";
    for (std::size_t l = 0; l < s.zeros.zeros.size(); ++l) {
      if (l) text += ',';
      text += format_number(s.zeros.zeros[l].value());
    }
    text += "]}";
  }
  text += "]}\n";
  out << text;
}

void write_json(const TrajectoryTable& t, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_json(t, out);
  finish_write(out, path);
}

TrajectoryTable read_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    TrajectoryTable t;
    t.n = doc.at("n").get<int>();
    const auto method = parse_method(doc.at("method").get<std::string>());
    if (!method) fail(ErrorKind::io, "read_json: unknown method");
    t.method = *method;
    for (const auto& item : doc.at("samples")) {
      TrajectorySample s;
      s.x = item.at("x").get<double>();
      s.y = item.at("y").get<double>();
      const auto zs = item.at("zeros").get<std::vector<double>>();
      if (zs.size() != static_cast<std::size_t>(t.n))
        fail(ErrorKind::io, "read_json: sample zero count differs from n");
      s.zeros = ZeroSet::from_values(t.n, s.x, zs);
      t.samples.push_back(std::move(s));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::io, std::string("read_json: ") + e.what());
  }
}

bool same_values(const TrajectoryTable& a, const TrajectoryTable& b) {
  if (a.n != b.n || a.method != b.method || a.samples.size() != b.samples.size()) return false;
  auto bits_equal = [](double p, double q) { return std::memcmp(&p, &q, sizeof p) == 0; };
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& sa = a.samples[i];
    const auto& sb = b.samples[i];
    if (!bits_equal(sa.x, sb.x) || !bits_equal(sa.y, sb.y)) return false;
    if (sa.zeros.zeros.size() != sb.zeros.zeros.size()) return false;
    for (std::size_t l = 0; l < sa.zeros.zeros.size(); ++l)
      if (!bits_equal(sa.zeros.value(l), sb.zeros.value(l))) return false;
  }
  return true;
}

}  // namespace legzeros
