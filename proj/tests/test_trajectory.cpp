#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "legzeros/error.hpp"
#include "legzeros/spectral.hpp"
#include "legzeros/trajectory.hpp"

using namespace legzeros;

namespace {

TrajectoryTable single(int n, double x, std::vector<double> zs, Method m = Method::spectral) {
  TrajectoryTable t{n, m, {}};
  t.samples.push_back({x, std::tanh(x), ZeroSet::from_values(n, x, zs)});
  return t;
}

std::string csv(const TrajectoryTable& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

std::string json(const TrajectoryTable& t) {
  std::ostringstream os;
  write_json(t, os);
  return os.str();
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {Method::spectral, Method::newton, Method::ode})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_FALSE(parse_method("euler").has_value());
}

TEST_CASE("uniform grid includes both ends exactly") {
  const auto g = uniform_grid(-5, 5, 11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == -5.0);
  CHECK(g[5] == 0.0);
  CHECK(g.back() == 5.0);
  CHECK_THROWS_AS(uniform_grid(1, 1, 3), Error);
  CHECK_THROWS_AS(uniform_grid(0, 1, 1), Error);
}

TEST_CASE("sampled table: n = 5 on [-5, 5]") {
  const auto t = sample(5, -5, 5, 11, Method::spectral, 1e-12);
  REQUIRE(t.samples.size() == 11);
  const auto& mid = t.samples[5].zeros;
  for (int l = 1; l <= 5; ++l)
    CHECK(std::abs(mid.value(static_cast<std::size_t>(l - 1)) - (6 - 2 * l)) <= 1e-10);
  for (std::size_t i = 0; i < 11; ++i) {
    if (i == 5) continue;  // x = 0 is computed, not mirrored
    const auto& a = t.samples[i].zeros;
    const auto& b = t.samples[10 - i].zeros;
    for (std::size_t l = 0; l < 5; ++l) CHECK(a.value(l) == -b.value(4 - l));
  }
  CHECK(check_table(t).ok());
}

TEST_CASE("sampled table: n = 1 is tanh") {
  const auto t = sample(1, 0, 2, 3, Method::spectral, 1e-12);
  for (const auto& s : t.samples)
    CHECK(s.zeros.value(0) == doctest::Approx(std::tanh(s.x)).epsilon(1e-12));
}

TEST_CASE("the three methods give the same table") {
  for (int n : {1, 3, 6, 10}) {
    const auto sp = sample(n, -6, 6, 121, Method::spectral, 1e-12);
    const auto nw = sample(n, -6, 6, 121, Method::newton, 1e-13);
    const auto od = sample(n, -6, 6, 121, Method::ode, 1e-10);
    CHECK(max_table_difference(sp, nw) <= 1e-10);
    CHECK(max_table_difference(sp, od) <= 1e-8);
    CHECK(check_table(od).ok());
  }
}

TEST_CASE("table properties on a wide grid") {
  for (int n = 1; n <= 12; ++n) {
    const auto t = sample(n, -10, 10, 201, Method::spectral, 1e-12);
    const auto c = check_table(t);
    CAPTURE(n);
    CHECK(c.x_increasing);
    CHECK(c.descending);
    CHECK(c.monotone);
    CHECK(c.endpoints);
  }
}

TEST_CASE("check_table flags broken tables") {
  auto t = sample(3, 0, 2, 5, Method::spectral, 1e-12);
  auto swapped = t;
  std::swap(swapped.samples[1].zeros.zeros[0], swapped.samples[1].zeros.zeros[1]);
  CHECK_FALSE(check_table(swapped).descending);
  auto stalled = t;
  stalled.samples[2].zeros = stalled.samples[1].zeros;
  CHECK_FALSE(check_table(stalled).monotone);
}

TEST_CASE("sampling errors carry the failing x") {
  try {
    sample(4, -40, 1, 3, Method::spectral, 1e-12);
  } catch (const Error&) {
    FAIL("mirror reduction should cover negative x");
  }
  try {
    sample(4, 0, 60, 3, Method::ode, 1e-9);
    FAIL("expected range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::range);
    CHECK(std::string(e.what()).rfind("at x = ", 0) == 0);
  }
  CHECK_THROWS_AS(sample(0, 0, 1, 3, Method::spectral, 1e-12), Error);
  CHECK_THROWS_AS(sample(2, 0, 1, 3, Method::spectral, 0.0), Error);
}

TEST_CASE("sampling is deterministic") {
  const auto a = sample(7, -3, 3, 301, Method::newton, 1e-13);
  const auto b = sample(7, -3, 3, 301, Method::newton, 1e-13);
  CHECK(same_values(a, b));
}

TEST_CASE("CSV layout") {
  CHECK(csv(single(1, 0.0, {0.0})) == "x,y,z1\n0,0,0\n");
  const double x = 0.5 * std::log(2.0);
  const auto t2 = TrajectoryTable{2, Method::spectral, {{x, 1.0 / 3, zeros_spectral(2, x)}}};
  CHECK(csv(t2) ==
        "x,y,z1,z2\n0.34657359027997264,0.33333333333333331,1.4574271077563381,"
        "-0.45742710775633816\n");
  const auto t3 = sample(3, 0, 1, 2, Method::spectral, 1e-12);
  CHECK(csv(t3).rfind("x,y,z1,z2,z3\n", 0) == 0);
}

TEST_CASE("JSON layout") {
  CHECK(json(single(1, 0.0, {0.0})) ==
        "{\"n\":1,\"method\":\"spectral\",\"samples\":[{\"x\":0,\"y\":0,\"zeros\":[0]}]}\n");
  TrajectoryTable empty{2, Method::spectral, {}};
  try {
    json(empty);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
  }
}

TEST_CASE("CSV and JSON round trips are exact") {
  std::mt19937_64 rng(20261015);
  std::uniform_real_distribution<double> pick(-7.0, 7.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = pick(rng);
    const double b = a + 0.5 + std::abs(pick(rng));
    const auto t = sample(4, a, b, 37, trial % 2 ? Method::newton : Method::spectral, 1e-13);
    std::istringstream cin(csv(t));
    const auto back_csv = read_csv(cin, t.method);
    CHECK(same_values(t, back_csv));
    CHECK(csv(back_csv) == csv(t));
    std::istringstream jin(json(t));
    const auto back_json = read_json(jin);
    CHECK(same_values(t, back_json));
    CHECK(json(back_json) == json(t));
  }
}

TEST_CASE("file writers and malformed input") {
  const auto dir = std::filesystem::temp_directory_path() / "legzeros_trajectory_test";
  std::filesystem::create_directories(dir);
  const auto t = sample(3, -1, 1, 9, Method::spectral, 1e-12);
  write_csv(t, dir / "t.csv");
  write_json(t, dir / "t.json");
  std::ifstream fc(dir / "t.csv");
  std::ifstream fj(dir / "t.json");
  CHECK(same_values(read_csv(fc), t));
  CHECK(same_values(read_json(fj), t));
  std::filesystem::remove_all(dir);

  try {
    write_csv(t, std::filesystem::path("/nonexistent-dir/t.csv"));
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
  for (const char* bad : {"", "x,z1\n", "x,y,z1\n0,0\n", "x,y,z1\n0,0,abc\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_csv(in), Error);
  }
  for (const char* bad : {"{", "{\"n\":2,\"method\":\"spectral\",\"samples\":[{\"x\":0,\"y\":0,\"zeros\":[1]}]}",
                          "{\"n\":1,\"method\":\"rk4\",\"samples\":[]}"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_json(in), Error);
  }
}
