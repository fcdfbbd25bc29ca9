#include "doctest.h"

#include <cmath>

#include "sonine/errors.hpp"
#include "sonine/specfun.hpp"

using namespace sonine;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("log_gamma trivial values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
}

TEST_CASE("log_gamma against mpmath") {
  CHECK(rel(log_gamma({0.5, 10.0}), {-14.789024734744293451, 13.030020034911089851}) < 1e-13);
  CHECK(rel(log_gamma({-3.5, 2.0}), {-6.4200913945756578534, -9.7119076581964872305}) < 1e-13);
  CHECK(rel(log_gamma({30.0, -40.0}), {49.232808494070298819, -143.83479582266482462}) < 1e-13);
}

TEST_CASE("log_gamma poles") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
}

TEST_CASE("chi") {
  CHECK(std::abs(chi(0.5) - 1.0) < 1e-15);
  CHECK(std::abs(chi(2.0) + 2.0 * kPi * kPi) < 1e-12);
  CHECK(rel(chi({0.3, 5.0}), {0.76601951761881885605, 0.57041596191755385831}) < 1e-13);
  CHECK(chi(-2.0) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(chi(3.0), PoleError);
  for (Complex s : {Complex(0.2, 3.0), Complex(0.9, -40.0), Complex(0.5, 150.0)}) {
    CHECK(std::abs(chi(s) * chi(1.0 - s) - 1.0) < 1e-12);
  }
}

TEST_CASE("completed factor") {
  CHECK(std::abs(completed_factor(2.0) - 1.0 / kPi) < 1e-15);
  CHECK_THROWS_AS(completed_factor(0.0), PoleError);
}

TEST_CASE("theta") {
  CHECK(std::abs(rs_theta(10.0) + 3.0670743962898952917) < 1e-12);
  CHECK(std::abs(rs_theta(50.0) - 26.461366070161409647) < 1e-12);
  CHECK(std::abs(rs_theta(0.5) + 1.1250527154055628616) < 1e-12);
  for (double t : {10.0, 37.5, 120.0}) CHECK(std::abs(rs_theta(t) - rs_theta_direct(t)) < 1e-11);
  CHECK_THROWS_AS(rs_theta(0.0), DomainError);
}
