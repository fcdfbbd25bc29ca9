#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "sonine/config.hpp"
#include "sonine/errors.hpp"
#include "sonine/report.hpp"

using namespace sonine;

TEST_CASE("config keys and errors") {
  RunConfig c;
  c.set("jobs", "4");
  c.set(" t_cut ", " 120.5 ");
  CHECK(c.jobs == 4);
  CHECK(c.t_cut == 120.5);
  CHECK_THROWS_AS(c.set("nope", "1"), ConfigError);
  CHECK_THROWS_AS(c.set("jobs", "four"), ConfigError);
  CHECK_THROWS_AS(c.set("jobs", "0"), ConfigError);
  CHECK(c.to_json()["t_cut"] == 120.5);
}

TEST_CASE("config file") {
  const auto path = std::filesystem::temp_directory_path() / "sonine_test.conf";
  std::ofstream(path) << "# comment\nseed = 7\n\nn_moebius=1000\n";
  RunConfig c;
  c.load(path.string());
  CHECK(c.seed == 7);
  CHECK(c.n_moebius == 1000);
  std::ofstream(path) << "seed 7\n";
  CHECK_THROWS_AS(c.load(path.string()), ConfigError);
}

TEST_CASE("report helpers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(complex_json(Complex(2.0, 0.0)) == 2.0);
  CHECK(complex_json(Complex(1.0, -1.0))["im"] == -1.0);
  IdentityReport r;
  r.tolerance = 1e-6;
  r.add(1.0, 2.0, 2.0 + 1e-7);
  CHECK(r.passed());
  r.runtime_ms = 12.0;
  const Json j = strip_runtime({{"a", r.to_json()}, {"runtime_ms", 3}});
  CHECK_FALSE(j.contains("runtime_ms"));
  CHECK_FALSE(j["a"].contains("runtime_ms"));
}
