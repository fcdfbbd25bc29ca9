#include "sonine/copoisson.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "sonine/errors.hpp"
#include "sonine/quadrature.hpp"
#include "sonine/zeta.hpp"

namespace sonine {
namespace {

constexpr double kCutoffThreshold = 1e-13;

void require_compact(const TestFunction& g, const char* who) {
  if (!g.compact() || !(g.a() > 0.0)) {
    throw DomainError(std::string(who) + ": requires support [a, A] with a > 0");
  }
}

// Sum of term(n) for n = 1, 2, ... until quiet_run consecutive terms fall
// below the threshold.
template <class Term>
double quiet_sum(Term term, const PoissonOptions& opts, double threshold, long& count,
                 const char* who) {
  double total = 0.0;
  int quiet = 0;
  for (long n = 1;; ++n) {
    if (n > opts.max_terms) {
      throw TruncationError(std::string(who) + ": terms above threshold at max_terms");
    }
    const double v = term(n);
    total += v;
    count = n;
    quiet = std::abs(v) < threshold ? quiet + 1 : 0;
    if (quiet >= opts.quiet_run) return total;
  }
}

// First T (from start, growing by 25%) with |f| < threshold on 128 samples of [T, 2T].
template <class F>
double decay_cutoff(F f, double start, double threshold) {
  for (double T = start; T < 1e5; T *= 1.25) {
    double peak = 0.0;
    for (int k = 0; k <= 128; ++k) peak = std::max(peak, std::abs(f(T * (1.0 + k / 128.0))));
    if (peak < threshold) return T;
  }
  throw ConvergenceError("co-Poisson cutoff: no decay below threshold before 1e5");
}

int oscillation_panels(double width, double rate) {
  return std::max(8, static_cast<int>(std::ceil(width * std::max(4.0, 4.0 * rate))));
}

}  // namespace

PoissonSums poisson_sums(const TestFunction& phi, double u, const PoissonOptions& opts) {
  if (!(u > 0.0)) throw DomainError("poisson_sums: requires u > 0");
  CosineOptions copts;
  copts.u_max = std::numeric_limits<double>::infinity();
  PoissonSums out;
  const double t0 = cosine_transform(phi, 0.0, copts);
  // Quadrature transforms carry an absolute floor of 1e-14 |phi|_1; terms
  // are treated as vanished once below it.
  double threshold = opts.term_threshold;
  if (phi.compact()) {
    auto fabs = [&](double t) { return 2.0 * std::abs(phi.value(t)); };
    threshold = std::max(threshold, 1e-14 * integrate_panels(fabs, phi.a(), phi.b(), 64));
  }
  out.transform_threshold = threshold;
  const double t_tail =
      quiet_sum([&](long n) { return cosine_transform(phi, n * u, copts); }, opts, threshold,
                out.transform_terms, "poisson_sums");
  out.transform_side = t0 + 2.0 * t_tail;

  const double f0 = phi.value(0.0);
  double f_tail = 0.0;
  if (phi.compact()) {
    const long last = static_cast<long>(std::ceil(phi.b() * u));
    if (last > opts.max_terms) throw TruncationError("poisson_sums: support exceeds max_terms");
    for (long m = 1; m <= last; ++m) f_tail += phi.value(m / u);
    out.function_terms = last;
  } else {
    f_tail = quiet_sum([&](long m) { return phi.value(m / u); }, opts, opts.term_threshold,
                       out.function_terms,
                       "poisson_sums");
  }
  out.function_side = (f0 + 2.0 * f_tail) / u;
  out.residual = std::abs(out.transform_side - out.function_side);
  return out;
}

double poisson_residual(const TestFunction& phi, double u, const PoissonOptions& opts) {
  return poisson_sums(phi, u, opts).residual;
}

double modified_poisson_sum(const TestFunction& phi, double t) {
  if (!(t > 0.0)) throw DomainError("modified_poisson_sum: requires t > 0");
  const double integral = mellin_right(phi, 0.0).real();
  double sum = 0.0;
  if (phi.compact()) {
    const long first = std::max(1L, static_cast<long>(std::floor(phi.a() / t)));
    const long last = static_cast<long>(std::ceil(phi.b() / t));
    for (long n = first; n <= last; ++n) sum += phi.value(n * t);
  } else {
    long count = 0;
    sum = quiet_sum([&](long n) { return phi.value(n * t); }, PoissonOptions{}, 1e-16, count,
                    "modified_poisson_sum");
  }
  return sum - integral / t;
}

IdentityReport muntz_check(const TestFunction& phi, const std::vector<Complex>& s_grid) {
  Stopwatch clock;
  require_compact(phi, "muntz_check");
  for (const Complex& s : s_grid) {
    if (!(s.real() > 0.0 && s.real() < 1.0)) {
      throw DomainError("muntz_check: requires 0 < Re s < 1");
    }
  }
  IdentityReport rep;
  rep.check = "muntz";
  rep.params = {{"phi", phi.describe()}};
  rep.tolerance = 1e-8;
  const double A = phi.b();
  const double integral = mellin_right(phi, 0.0).real();
  // Near 0 the modified sum is a Riemann-sum error: negligible below t_lo.
  const double t_lo =
      1.0 / decay_cutoff([&](double T) { return modified_poisson_sum(phi, 1.0 / T) / T; },
                         4.0 / phi.a(), kCutoffThreshold);
  const Eigen::Index k = static_cast<Eigen::Index>(s_grid.size());
  auto f = [&](double t) {
    const double m = modified_poisson_sum(phi, t);
    Eigen::ArrayXcd out(k);
    for (Eigen::Index i = 0; i < k; ++i) out[i] = m * std::exp((s_grid[i] - 1.0) * std::log(t));
    return out;
  };
  Eigen::ArrayXcd rhs = Eigen::ArrayXcd::Zero(k);
  int pieces = 0;
  for (double hi = A; hi > t_lo; hi *= 0.5) {
    const double lo = std::max(t_lo, 0.5 * hi);
    const int panels = oscillation_panels(1.0, 1.0 / lo);
    rhs += integrate_adaptive(f, lo, hi, 1e-13, panels);
    ++pieces;
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    const Complex s = s_grid[i];
    rhs[i] += integral * std::exp((s - 1.0) * std::log(A)) / (s - 1.0);
    const Complex lhs = zeta(s) * mellin_right(phi, 1.0 - s);
    rep.add(complex_json(s), lhs, rhs[i]);
  }
  rep.budget = {{"t_lo", t_lo}, {"geometric_pieces", pieces}};
  rep.runtime_ms = clock.ms();
  return rep;
}

double copoisson_sum(const TestFunction& g, double t, long n_max) {
  require_compact(g, "copoisson_sum");
  if (!(t > 0.0)) throw DomainError("copoisson_sum: requires t > 0");
  const long needed = static_cast<long>(std::ceil(t / g.a()));
  if (n_max < needed) {
    throw TruncationError("copoisson_sum: n_max " + std::to_string(n_max) +
                          " below ceil(t/a) = " + std::to_string(needed));
  }
  const long first = std::max(1L, static_cast<long>(std::floor(t / g.b())));
  double sum = 0.0;
  for (long n = first; n <= needed; ++n) sum += g.value(t / n) / n;
  return sum - mellin_right(g, 1.0).real();
}

double copoisson_sum(const TestFunction& g, double t) {
  require_compact(g, "copoisson_sum");
  return copoisson_sum(g, t, static_cast<long>(std::ceil(t / g.a())));
}

CoPoissonElement::CoPoissonElement(TestFunction g, bool rescale) : g_(std::move(g)) {
  require_compact(g_, "CoPoissonElement");
  if (rescale) {
    rescale_ = 1.0 / std::sqrt(g_.a() * g_.b());
    if (rescale_ != 1.0) g_ = g_.dilated(rescale_);
  }
  g0_ = mellin_right(g_, 0.0).real();
  g1_ = mellin_right(g_, 1.0).real();
}

long CoPoissonElement::n_max(double t) const {
  return static_cast<long>(std::ceil(t / a()));
}

double CoPoissonElement::value(double t) const {
  if (!(t > 0.0)) throw DomainError("CoPoissonElement::value: requires t > 0");
  if (t <= a()) return -g1_;
  const long first = std::max(1L, static_cast<long>(std::floor(t / A())));
  const long last = n_max(t);
  double sum = 0.0;
  for (long n = first; n <= last; ++n) sum += g_.value(t / n) / n;
  return sum - g1_;
}

double CoPoissonElement::dual(double t) const {
  if (!(t > 0.0)) throw DomainError("CoPoissonElement::dual: requires t > 0");
  if (t * A() <= 1.0) return -g0_;
  const long first = std::max(1L, static_cast<long>(std::floor(a() * t)));
  const long last = static_cast<long>(std::ceil(A() * t));
  double sum = 0.0;
  for (long m = first; m <= last; ++m) sum += g_.value(m / t);
  return sum / t - g0_;
}

Complex CoPoissonElement::mellin(Complex s) const {
  return zeta(s) * mellin_right(g_, s);
}

double CoPoissonElement::value_cutoff(double threshold) const {
  return decay_cutoff([&](double t) { return value(t); }, 4.0 * A(), threshold);
}

double CoPoissonElement::dual_cutoff(double threshold) const {
  return decay_cutoff([&](double t) { return dual(t); }, 4.0 / a(), threshold);
}

std::vector<double> cosine_with_plateau(const std::function<double(double)>& f,
                                        double plateau_value, double plateau_end,
                                        double end, const std::vector<double>& u,
                                        double abs_tol) {
  const Eigen::Index k = static_cast<Eigen::Index>(u.size());
  std::vector<double> out(u.size(), 0.0);
  if (k == 0) return out;
  const double u_top = *std::max_element(u.begin(), u.end());
  auto integrand = [&](double t) {
    const double v = 2.0 * f(t);
    Eigen::ArrayXd r(k);
    for (Eigen::Index i = 0; i < k; ++i) r[i] = v * std::cos(2.0 * kPi * t * u[i]);
    return r;
  };
  // f varies on unit scale near the plateau edge; the bulk is split so that
  // each piece is refined independently.
  Eigen::ArrayXd body = Eigen::ArrayXd::Zero(k);
  double lo = plateau_end;
  while (lo < end) {
    const double hi = std::min(end, std::max(lo + 1.0, 2.0 * lo));
    const int start = oscillation_panels(hi - lo, std::max(u_top, 1.0));
    body += integrate_doubling(integrand, lo, hi, 0.0, abs_tol, start, 1 << 20).value;
    lo = hi;
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    const double w = 2.0 * kPi * u[i];
    const double plateau = w == 0.0 ? 2.0 * plateau_value * plateau_end
                                    : 2.0 * plateau_value * std::sin(w * plateau_end) / w;
    out[i] = plateau + body[i];
  }
  return out;
}

std::vector<double> CoPoissonElement::transform_value(const std::vector<double>& u) const {
  return cosine_with_plateau([&](double t) { return value(t); }, -g1_, a(),
                             value_cutoff(kCutoffThreshold), u, 1e-12);
}

std::vector<double> CoPoissonElement::transform_dual(const std::vector<double>& u) const {
  return cosine_with_plateau([&](double t) { return dual(t); }, -g0_, 1.0 / A(),
                             dual_cutoff(kCutoffThreshold), u, 1e-12);
}

std::vector<Complex> CoPoissonElement::mellin_numeric(const std::vector<Complex>& s) const {
  const Eigen::Index k = static_cast<Eigen::Index>(s.size());
  std::vector<Complex> out(s.size());
  if (k == 0) return out;
  double im_top = 0.0;
  for (const Complex& z : s) im_top = std::max(im_top, std::abs(z.imag()));
  const double end = value_cutoff(kCutoffThreshold);
  auto integrand = [&](double t) {
    const double v = value(t);
    const double lt = std::log(t);
    Eigen::ArrayXcd r(k);
    for (Eigen::Index i = 0; i < k; ++i) r[i] = v * std::exp(-s[i] * lt);
    return r;
  };
  Eigen::ArrayXcd body = Eigen::ArrayXcd::Zero(k);
  double lo = a();
  while (lo < end) {
    const double hi = std::min(end, std::max(lo + 1.0, 2.0 * lo));
    const int start = oscillation_panels(hi - lo, std::max(1.0, im_top / (2.0 * kPi * lo)));
    body += integrate_doubling(integrand, lo, hi, 0.0, 1e-12, start, 1 << 20).value;
    lo = hi;
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    // Plateau -g1 on (0, a): int_0^a t^-s dt = a^(1-s)/(1-s).
    const Complex plateau =
        g1_ == 0.0 ? Complex(0.0) : -g1_ * std::exp((1.0 - s[i]) * std::log(a())) / (1.0 - s[i]);
    out[i] = plateau + body[i];
  }
  return out;
}

double CoPoissonElement::norm() const {
  const double end = value_cutoff(kCutoffThreshold);
  auto sq = [&](double t) {
    const double v = value(t);
    return v * v;
  };
  double body = 0.0;
  double lo = a();
  while (lo < end) {
    const double hi = std::min(end, std::max(lo + 1.0, 2.0 * lo));
    body += integrate_doubling(sq, lo, hi, 1e-12, 1e-16, oscillation_panels(hi - lo, 1.0),
                               1 << 20)
                .value;
    lo = hi;
  }
  return std::sqrt(g1_ * g1_ * a() + body);
}

std::vector<double> default_u_grid(double a, double A) {
  return {0.5 * a, a, 2.0 * a, 1.0, 0.5 * A, A, 2.0 * A};
}

IdentityReport copoisson_identity_check(const TestFunction& g, const std::vector<double>& u_grid) {
  Stopwatch clock;
  CoPoissonElement el(g, false);
  for (double u : u_grid) {
    if (!(u > 0.0)) throw DomainError("copoisson_identity_check: requires u > 0");
  }
  IdentityReport rep;
  rep.check = "copoisson";
  rep.params = {{"g", g.describe()}, {"a", el.a()}, {"A", el.A()}};
  rep.tolerance = 1e-6;
  const double cut = el.dual_cutoff(kCutoffThreshold);
  const auto lhs = el.transform_dual(u_grid);
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    rep.add(u_grid[i], lhs[i], el.value(u_grid[i]));
  }
  rep.budget = {{"dual_cutoff", cut}, {"cutoff_threshold", kCutoffThreshold}};
  rep.runtime_ms = clock.ms();
  return rep;
}

IdentityReport copoisson_mellin_check(const TestFunction& g, const std::vector<Complex>& s_grid) {
  Stopwatch clock;
  CoPoissonElement el(g, false);
  for (const Complex& s : s_grid) {
    if (!(s.real() > 0.0 && s.real() < 1.0)) {
      throw DomainError("copoisson_mellin_check: requires 0 < Re s < 1");
    }
  }
  IdentityReport rep;
  rep.check = "copoisson_mellin";
  rep.params = {{"g", g.describe()}, {"a", el.a()}, {"A", el.A()}};
  rep.tolerance = 1e-6;
  const auto rhs = el.mellin_numeric(s_grid);
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    rep.add(complex_json(s_grid[i]), el.mellin(s_grid[i]), rhs[i]);
  }
  rep.budget = {{"value_cutoff", el.value_cutoff(kCutoffThreshold)},
                {"cutoff_threshold", kCutoffThreshold}};
  rep.runtime_ms = clock.ms();
  return rep;
}

}  // namespace sonine
