#include "legzeros/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "legzeros/error.hpp"
#include "legzeros/legendre.hpp"
#include "legzeros/trajectory.hpp"
#include "legzeros/verify.hpp"

namespace legzeros::cli {

namespace {

struct Config {
  int n = 0;
  double x = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  int samples = 201;
  std::string method = "spectral";
  double z = 0.0;
  double tol = 1e-10;
  std::string format = "csv";
  std::string output;  // empty: standard output
  int n_max = 8;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return kUsage;
    default: return kNumeric;
  }
}

// Writes `text` to the configured destination.
void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) fail(ErrorKind::io, cfg.output + ": cannot open for writing");
  file << text;
  file.flush();
  if (!file) fail(ErrorKind::io, cfg.output + ": write failed");
}

void add_n(CLI::App* sub, Config& cfg) {
  sub->add_option("--n", cfg.n, "degree n")->required()->check(CLI::Range(1, kMaxDegree));
}

void add_method(CLI::App* sub, Config& cfg) {
  sub->add_option("--method", cfg.method, "spectral | newton | ode")
      ->check(CLI::IsMember({"spectral", "newton", "ode"}))
      ->default_str("spectral");
  sub->add_option("--tol", cfg.tol, "method tolerance")
      ->check(CLI::PositiveNumber)
      ->default_str("1e-10");
}

void add_output(CLI::App* sub, Config& cfg) {
  sub->add_option("--output", cfg.output, "output file (default: standard output)");
}

std::string zeros_line(const ZeroSet& zs) {
  std::string line;
  for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
    if (i) line += ' ';
    line += shortest(zs.value(i));
  }
  return line + '\n';
}

std::string verify_text(const VerifyReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << c.detail
       << ")\n";
  os << report.checks.size() << " checks, " << report.failures() << " failed (n <= "
     << report.n_max << ")\n";
  return os.str();
}

}  // namespace

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Zeros of Gamma(1-z) P_n^z(tanh x) in the order z", "legzeros"};
  app.require_subcommand(1);

  auto* zeros = app.add_subcommand("zeros", "print the n zeros at x, largest first");
  add_n(zeros, cfg);
  zeros->add_option("--x", cfg.x, "argument x")->required();
  add_method(zeros, cfg);
  add_output(zeros, cfg);

  auto* trace = app.add_subcommand("trace", "sample the zero trajectories over a uniform grid");
  add_n(trace, cfg);
  trace->add_option("--x-min", cfg.x_min, "left end of the grid")->required();
  trace->add_option("--x-max", cfg.x_max, "right end of the grid")->required();
  trace->add_option("--samples", cfg.samples, "grid points, both ends included")
      ->check(CLI::Range(2, kMaxSamples))
      ->default_str("201");
  add_method(trace, cfg);
  trace->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  add_output(trace, cfg);

  auto* psi = app.add_subcommand("psi", "evaluate Gamma(1-z) P_n^z(tanh x)");
  add_n(psi, cfg);
  psi->add_option("--x", cfg.x, "argument x")->required();
  psi->add_option("--z", cfg.z, "order z")->required();
  add_output(psi, cfg);

  auto* verify = app.add_subcommand("verify", "run the invariant suite for n = 1..n-max");
  verify->add_option("--n-max", cfg.n_max, "largest degree checked")
      ->check(CLI::Range(1, kMaxVerifyDegree))
      ->default_str("8");
  add_output(verify, cfg);

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "legzeros: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  if (*trace && !(cfg.x_min < cfg.x_max)) {
    err << "legzeros: --x-min must be smaller than --x-max\n";
    return kUsage;
  }

  try {
    if (*zeros) {
      emit(cfg, zeros_line(zeros_by(*parse_method(cfg.method), cfg.n, cfg.x, cfg.tol)), out);
    } else if (*trace) {
      const auto table = sample(cfg.n, cfg.x_min, cfg.x_max, cfg.samples,
                                 *parse_method(cfg.method), cfg.tol);
      std::ostringstream os;
      if (cfg.format == "csv") {
        write_csv(table, os);
      } else {
        write_json(table, os);
      }
      emit(cfg, os.str(), out);
    } else if (*psi) {
      emit(cfg, shortest(eval_psi({cfg.n, cfg.x, cfg.z})) + '\n', out);
    } else if (*verify) {
      const auto report = run_verification(cfg.n_max);
      emit(cfg, verify_text(report), out);
      if (!report.passed()) {
        err << "legzeros: verification failed (" << report.failures() << " checks)\n";
        return kVerification;
      }
    }
  } catch (const Error& e) {
    err << "legzeros: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kSuccess;
}

}  // namespace legzeros::cli
