#include "doctest.h"

#include <cmath>

#include "sonine/errors.hpp"
#include "sonine/sonine_lab.hpp"

using namespace sonine;

TEST_CASE("moment normalization") {
  const MomentNormalization n = normalize_moments(make_bump(0.5, 2.0));
  CHECK(std::abs(n.moment0) <= 1e-10);
  CHECK(std::abs(n.moment1) <= 1e-10);
  CHECK(std::abs(mellin_right(n.g_star, 0.0)) <= 1e-10);
  CHECK(std::abs(mellin_right(n.g_star, 1.0)) <= 1e-10);
  CHECK(n.condition < 1e8);
  const MomentNormalization again = normalize_moments(n.g_star);
  CHECK(std::abs(again.alpha) < 1e-8);
  CHECK(std::abs(again.beta) < 1e-8);
}

TEST_CASE("co-Poisson element lies in the Sonine space") {
  const MomentNormalization n = normalize_moments(make_bump(0.5, 2.0));
  const SonineElement e = SonineElement::from_copoisson(n.g_star);
  const double a = e.copoisson().a();
  CHECK(e.vanishing(a) <= 1e-9);
  const SupportProfile p = support_profile(e, 1e-6);
  CHECK(p.lambda == doctest::Approx(a).epsilon(0.05));
  CHECK(p.mu == doctest::Approx(a).epsilon(0.05));
  CHECK(p.a_index == doctest::Approx(std::sqrt(p.lambda * p.mu)));
  CHECK_FALSE(p.flagged);

  const SupportProfile q = support_profile(e.dilated(2.0), 1e-6);
  CHECK(q.lambda == doctest::Approx(2.0 * p.lambda).epsilon(0.01));
  CHECK(q.mu == doctest::Approx(p.mu / 2.0).epsilon(0.01));
  CHECK(q.a_index == doctest::Approx(p.a_index).epsilon(0.01));
}

TEST_CASE("gaussian profile is flagged") {
  const TestFunction g = make_gaussian();
  const SupportProfile p = support_profile([&](double t) { return g(t); },
                                           [&](double t) { return g(t); }, 1e-3, 3.0);
  CHECK(p.flagged);
  CHECK(p.lambda == doctest::Approx(1e-3));
}

TEST_CASE("hermite K1 element") {
  const SonineElement h = build_k1_hermite(24, chebyshev_points(8));
  CHECK(h.vanish_tol <= 1e-4);
  CHECK(h.vanishing(1.0) <= 1e-4);
  CHECK(h.coefficients().size() == 24);
  for (double u : {0.3, 1.2, 2.5}) {
    CHECK(std::abs(h.transform(u) - cosine_transform_numeric(h.hermite(), u)) < 1e-8);
  }
  CHECK_THROWS_AS(build_k1_hermite(2, {0.5}), DegenerateError);
  CHECK_THROWS_AS(build_k1_hermite(8, chebyshev_points(9)), DomainError);
}

TEST_CASE("rectangle counts") {
  const ZeroCountReport r = count_zeros_rectangle([](Complex s) { return xi(s); }, {-1.0, 0.0}, {2.0, 30.0});
  CHECK(r.winding_count == 3);
  const ZeroCountReport e = count_zeros_rectangle([](Complex s) { return std::exp(s); }, {-1.0, -1.0}, {2.0, 5.0});
  CHECK(e.winding_count == 0);
}

TEST_CASE("zero density counts agree") {
  const MomentNormalization n = normalize_moments(symmetric_seed(0.4));
  const ZeroTable t = find_zeros(101.5);
  const ZeroCountReport r = zero_density_report(n.g_star, 100.0, t);
  CHECK(r.zeta_component + r.transform_component == r.winding_count);
  CHECK(r.ratio >= 0.7);
  CHECK(r.ratio <= 1.5);
  CHECK_THROWS_AS(zero_density_report(n.g_star, 150.0, t), DomainError);
  CHECK_THROWS_AS(zero_density_report(symmetric_seed(0.4), 50.0, t), DomainError);
}

TEST_CASE("multiplicative translates share zeros") {
  const MomentNormalization n = normalize_moments(make_bump(0.5, 2.0));
  const SonineElement f = SonineElement::from_copoisson(n.g_star);
  const SonineElement g = f.dilated(1.5);
  for (Complex s : {Complex(0.5, 14.134725141734693790), Complex(0.7, 5.0)}) {
    const Complex ratio = g.mellin(s) / f.mellin(s);
    const Complex expected = std::pow(Complex(1.5), 0.5 - s);
    CHECK(std::abs(ratio - expected) < 1e-6 * std::abs(expected) + 1e-6);
  }
}

TEST_CASE("division by (s - rho)(s - conj rho) keeps the vanishing interval") {
  const MomentNormalization n = normalize_moments(make_bump(0.5, 2.0));
  const SonineElement f = SonineElement::from_copoisson(n.g_star);
  const TestFunction& g = f.copoisson().g();
  const double a = f.copoisson().a();
  const double t_cut = 300.0;
  const CachedMellin ghat(g, t_cut);
  const Complex w(0.5, 14.134725141734693790);
  MellinSamples samples;
  for (int k = 0; k * 0.05 <= t_cut + 1e-9; ++k) {
    const Complex s(0.5, 0.05 * k);
    samples.s_values.push_back(s);
    samples.values.push_back(zeta(s) * ghat(s) / ((s - w) * (s - std::conj(w))));
  }
  double inside = 0.0;
  for (double x = 0.05; x <= a - 1e-3; x += 0.05) {
    inside = std::max(inside, std::abs(inverse_mellin(samples, 1.0 / x, t_cut).value / x));
  }
  const double outside = std::abs(inverse_mellin(samples, 1.0, t_cut).value);
  CHECK(inside <= 1e-6 * f.norm());
  CHECK(outside > 1e-3 * f.norm());
}
