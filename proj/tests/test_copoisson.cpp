#include "doctest.h"

#include <cmath>

#include "sonine/copoisson.hpp"
#include "sonine/errors.hpp"

using namespace sonine;

TEST_CASE("poisson residuals") {
  const TestFunction g = make_gaussian();
  for (double u : {1.0, std::sqrt(2.0), 2.0}) CHECK(poisson_residual(g, u) <= 1e-12);
  const TestFunction b = make_bump(0.5, 2.0);
  for (double u : {0.5, 1.0, 3.0}) CHECK(poisson_residual(b, u) <= 1e-8);
}

TEST_CASE("modified poisson sum") {
  const TestFunction b = make_bump(0.5, 2.0);
  CHECK(std::abs(modified_poisson_sum(b, 3.0) + 0.76606870190888420538 / 3.0) < 1e-12);
  CHECK_THROWS_AS(modified_poisson_sum(b, 0.0), DomainError);
}

TEST_CASE("muntz formula") {
  const IdentityReport r = muntz_check(make_bump(0.5, 2.0), {Complex(0.5, 0.0), Complex(0.5, 10.0)});
  CHECK(r.max_abs_err <= 1e-8);
  CHECK_THROWS_AS(muntz_check(make_bump(0.5, 2.0), {Complex(1.5, 0.0)}), DomainError);
}

TEST_CASE("co-Poisson sums against mpmath") {
  const TestFunction b = make_bump(0.5, 2.0);
  CHECK(std::abs(copoisson_sum(b, 3.0) - 0.085666265011979918955) < 1e-12);
  CHECK(std::abs(copoisson_sum(b, 0.7) + 0.51645382438384791052) < 1e-12);
  CHECK(std::abs(copoisson_sum(b, 0.3) + 0.64284468964605518976) < 1e-12);
  CHECK_THROWS_AS(copoisson_sum(b, 30.0, 10), TruncationError);
}

TEST_CASE("co-Poisson element plateaus") {
  const CoPoissonElement el(make_bump(0.5, 2.0), false);
  CHECK(el.g0() == doctest::Approx(0.76606870190888420538).epsilon(1e-12));
  CHECK(el.g1() == doctest::Approx(0.64284468964605518976).epsilon(1e-12));
  for (double t : {0.1, 0.45}) {
    CHECK(std::abs(el.value(t) - el.c_low()) < 1e-14);
    CHECK(std::abs(el.dual(t) - el.c_dual()) < 1e-14);
  }
  const CoPoissonElement scaled(make_bump(0.5, 3.0), true);
  CHECK(scaled.a() * scaled.A() == doctest::Approx(1.0));
}

TEST_CASE("co-Poisson identity and Mellin factorization") {
  const TestFunction b = make_bump(0.5, 2.0);
  const IdentityReport r = copoisson_identity_check(b, default_u_grid(0.5, 2.0));
  CHECK(r.points.size() == 7);
  CHECK(r.max_abs_err <= 1e-6);
  const IdentityReport m =
      copoisson_mellin_check(b, {Complex(0.5, 0.0), Complex(0.5, 14.134725141734693790)});
  CHECK(m.max_abs_err <= 1e-6);
}
