#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sonine/errors.hpp"
#include "sonine/zeta.hpp"

using namespace sonine;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("zeta values") {
  CHECK(std::abs(zeta(2.0) - kPi * kPi / 6.0) < 1e-14);
  CHECK(std::abs(zeta(-1.0) + 1.0 / 12.0) < 1e-14);
  CHECK(std::abs(zeta(0.0) + 0.5) < 1e-14);
  CHECK(rel(zeta({0.5, 20.0}), {0.42991386043784337216, -1.0642914430805891127}) < 1e-12);
  CHECK(rel(zeta({3.0, 4.0}), {0.89055490696507325814, -0.0080759454243272598468}) < 1e-12);
  CHECK(rel(zeta({-2.5, 1.0}), {0.023593610586379648604, 0.0014077996058383770388}) < 1e-11);
  CHECK(rel(zeta({0.2, 150.0}), {-0.59720361385206459274, 0.66969235498345970564}) < 1e-11);
  CHECK_THROWS_AS(zeta(1.0), PoleError);
  CHECK(std::abs(zeta_times_s_minus_one(1.0) - 1.0) < 1e-12);
}

TEST_CASE("hardy z is real and matches mpmath") {
  CHECK(std::abs(hardy_z(30.0) - 0.59602851923988495532) < 1e-12);
  CHECK_THROWS_AS(hardy_z(-1.0), DomainError);
}

TEST_CASE("xi symmetry") {
  const Complex s(0.3, 17.0);
  CHECK(rel(xi(s), xi(1.0 - s)) < 1e-11);
}

TEST_CASE("zeros below 100") {
  const ZeroTable t = find_zeros(100.0);
  REQUIRE(t.size() == 29);
  CHECK(t.sign_changes == t.argument_count);
  CHECK(std::abs(t.zeros[0].gamma - 14.134725141734693790) < 1e-9);
  CHECK(std::abs(t.zeros[28].gamma - 98.831194218193692233) < 1e-9);
  CHECK(rel(t.zeros[0].zeta_prime, {0.78329651186703092865, 0.12469982974817108941}) < 1e-8);
  CHECK(t.count_below(30.0) == 3);
  const auto bounds = block_partition(t);
  CHECK(bounds.back() == doctest::Approx(t.zeros.back().gamma + 1.0));
  for (std::size_t n = 0; n < bounds.size(); ++n) CHECK(bounds[n] > static_cast<double>(n + 1));
  CHECK_THROWS_AS(find_zeros(5.0), DomainError);
}

TEST_CASE("xi count on rectangles") {
  CHECK(xi_zero_count(30.0).winding_count == 3);
}

TEST_CASE("zero table round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "sonine_test_zeros";
  std::filesystem::create_directories(dir);
  const ZeroTable t = find_zeros(40.0);
  const std::string path = (dir / "z.txt").string();
  save_zero_table(t, path);
  const ZeroTable u = load_zero_table(path);
  REQUIRE(u.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(u.zeros[i].gamma == t.zeros[i].gamma);
  CHECK(u.source == ZeroSource::ingested);

  std::ofstream(dir / "bad.txt") << "14.134725141734693\nfoo\n";
  try {
    load_zero_table((dir / "bad.txt").string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::ofstream(dir / "wrong.txt") << "14.134725141734693\n15.0\n";
  CHECK_THROWS_AS(load_zero_table((dir / "wrong.txt").string()), ValidationError);
}

TEST_CASE("zeta prime routes agree") {
  const ZetaZero z{1, 14.134725141734693790, 1, {}};
  const Complex a = zeta_prime_cauchy(z.rho());
  const Complex b = zeta_prime_central(z.rho());
  CHECK(std::abs(a - b) < 1e-8);
}
