#include "doctest.h"

#include <cmath>

#include "sonine/errors.hpp"
#include "sonine/mellin.hpp"

using namespace sonine;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("bump support and shape") {
  const TestFunction b = make_bump(0.5, 2.0);
  CHECK(b(0.5) == 0.0);
  CHECK(b(2.0) == 0.0);
  CHECK(b(3.0) == 0.0);
  CHECK(b(1.25) == doctest::Approx(1.0));
  CHECK(b.compact());
  CHECK_THROWS_AS(make_bump(2.0, 1.0), DomainError);
}

TEST_CASE("mellin of a bump against mpmath") {
  const TestFunction b = make_bump(0.5, 2.0);
  CHECK(std::abs(mellin_right(b, 0.0) - 0.76606870190888420538) < 1e-12);
  CHECK(std::abs(mellin_right(b, 1.0) - 0.64284468964605518976) < 1e-12);
  CHECK(rel(mellin_right(b, {0.5, 3.0}), {0.47402307043916786858, -0.28741854902853051968}) < 1e-11);
  const TestFunction bt = make_bump(0.25, 3.0, {1.0});
  CHECK(rel(mellin_right(bt, {0.5, 10.0}), {-0.1483593643715794156, -0.23527603355623806986}) < 1e-10);
}

TEST_CASE("gaussian mellin closed form and quadrature") {
  const TestFunction g = make_gaussian();
  const Complex s(0.5, 3.0);
  const Complex oracle(-0.080058317776315570191, 0.011856368234868932386);
  CHECK(rel(mellin_right(g, s), oracle) < 1e-13);
  CHECK(rel(mellin_right_numeric(g, s), oracle) < 1e-9);
  CHECK_THROWS_AS(mellin_right(g, 1.0), DomainError);
}

TEST_CASE("cached mellin matches direct") {
  const TestFunction b = make_bump(0.5, 2.0);
  const CachedMellin m(b, 60.0);
  for (double tau : {0.0, 14.1, 59.0}) {
    const Complex s(0.5, tau);
    CHECK(std::abs(m(s) - mellin_right(b, s)) < 1e-11);
  }
}

TEST_CASE("cosine transform") {
  const TestFunction b = make_bump(0.5, 2.0);
  CHECK(std::abs(cosine_transform(b, 0.7) - 0.52009215761944100738) < 1e-12);
  CHECK(std::abs(cosine_transform(b, 1.0)) < 1e-12);
  const TestFunction g = make_gaussian();
  for (double u : {0.0, 0.5, 1.3}) CHECK(std::abs(cosine_transform(g, u) - g(u)) < 1e-14);
  CHECK_THROWS_AS(cosine_transform(b, -1.0), DomainError);
  CHECK_THROWS_AS(cosine_transform(b, 1e4), BudgetError);
}

TEST_CASE("hermite functions are cosine eigenfunctions") {
  for (int m = 0; m <= 6; ++m) {
    std::vector<double> e(m + 1, 0.0);
    e[m] = 1.0;
    const TestFunction psi = make_hermite(e);
    const double sign = m % 2 == 0 ? 1.0 : -1.0;
    for (double u : {0.2, 0.9, 1.7}) {
      CHECK(std::abs(cosine_transform_numeric(psi, u) - sign * psi(u)) < 1e-9);
    }
  }
}

TEST_CASE("kernel series against mpmath") {
  const KernelSeries k = kernel_series(0.5, {0.3, 2.0}, 0.7, 60);
  CHECK(rel(k.value, {-0.19779393372659575444, -0.64778980651553903235}) < 1e-9);
  CHECK_THROWS_AS(kernel_series(0.5, {1.5, 0.0}, 0.7, 60), DomainError);
}

TEST_CASE("inverse mellin recovers the reflected function") {
  const TestFunction g = make_gaussian();
  const MellinSamples s = sample_critical_line(g, 60.0);
  for (double t : {0.7, 1.0, 1.6}) {
    const InverseMellin r = inverse_mellin(s, t, 60.0);
    CHECK(std::abs(r.value - g(1.0 / t) / t) < 1e-9);
  }
}
