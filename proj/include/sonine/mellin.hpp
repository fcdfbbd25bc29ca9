#pragma once

#include <string>
#include <vector>

#include "sonine/specfun.hpp"

namespace sonine {

enum class TestKind { bump, gaussian, hermite, combination };

const char* to_string(TestKind k);

/// One building block of a TestFunction. The base profile h is one of
///   bump:     t^tilt exp(-1/((t - lo)(hi - t))) / exp(-4/(hi - lo)^2) on (lo, hi)
///   gaussian: exp(-pi lambda t^2)
///   hermite:  sum_m hermite[m] psi_{2m}(t)
/// and the component is weight * R_c(D_d h) with D_d h(t) = h(t/d)/sqrt(d)
/// and R_c f(t) = (c/t) f(c^2/t) (skipped when reflect == 0).
struct Component {
  TestKind kind = TestKind::bump;
  double weight = 1.0;
  double lo = 0.0;
  double hi = 0.0;
  double tilt = 0.0;
  double lambda = 1.0;
  std::vector<double> hermite;
  double dilation = 1.0;
  double reflect = 0.0;

  double value(double t) const;
  /// Support [lo, hi] after dilation and reflection; hi may be +inf.
  std::pair<double, double> support() const;
};

/// Smooth even test function on (0, inf), a finite sum of components.
class TestFunction {
public:
  TestFunction() = default;
  explicit TestFunction(Component c);

  double operator()(double t) const { return value(t); }
  double value(double t) const;

  TestKind kind() const;
  /// Union of component supports; b() may be +inf.
  double a() const { return support_.first; }
  double b() const { return support_.second; }
  bool compact() const;
  const std::vector<Component>& components() const { return parts_; }

  TestFunction operator+(const TestFunction& o) const;
  TestFunction operator-(const TestFunction& o) const;
  TestFunction operator*(double w) const;
  /// t -> f(t/d)/sqrt(d).
  TestFunction dilated(double d) const;
  /// t -> (c/t) f(c^2/t); c = 1 gives I(f)(t) = f(1/t)/t.
  TestFunction reflected(double c = 1.0) const;

  std::string describe() const;

private:
  void push(Component c);
  std::vector<Component> parts_;
  std::pair<double, double> support_{0.0, 0.0};
};

struct BumpShape {
  double tilt = 0.0;
};

/// C-infinity bump on [a, A], exactly zero outside, untilted peak 1.
/// DomainError unless 0 < a < A.
TestFunction make_bump(double a, double A, BumpShape shape = {});

/// c exp(-pi lambda t^2).
TestFunction make_gaussian(double c = 1.0, double lambda = 1.0);

/// sum_m coeffs[m] psi_{2m}(t), psi_n the Hermite functions scaled so that
/// the cosine transform acts as (-1)^m on psi_{2m}.
TestFunction make_hermite(std::vector<double> coeffs);

/// psi_0, psi_2, ..., psi_{2 (count - 1)} at t.
std::vector<double> hermite_even(int count, double t);

/// Right Mellin transform int_0^inf g(t) t^-s dt. Closed form for Gaussian
/// components; Hermite components use an exact series on [0, 1/4] and
/// quadrature beyond; compact components use GL-32 with panel doubling to
/// 1e-12 relative. ConvergenceError past 2^12 panels. DomainError for a
/// Gaussian or Hermite component at a pole (s = 1, 3, 5, ...).
Complex mellin_right(const TestFunction& g, Complex s);

/// Same quantity by straight quadrature on the (truncated) support, for any
/// kind; valid for Re s < 1 on non-compact kinds.
Complex mellin_right_numeric(const TestFunction& g, Complex s);

/// Right Mellin transform of a compactly supported g on a fixed GL-32 grid
/// in log t, sized for |Im s| <= im_max. Repeated evaluations reuse the
/// sampled values of g.
class CachedMellin {
public:
  CachedMellin(const TestFunction& g, double im_max);
  Complex operator()(Complex s) const;
  std::size_t nodes() const { return log_t_.size(); }

private:
  std::vector<double> log_t_;
  std::vector<double> weight_;
};

struct CosineOptions {
  double u_max = 200.0;
  double rel_tol = 1e-12;
};

/// F+(g)(u) = 2 int_0^inf cos(2 pi t u) g(t) dt. Closed form for
/// unreflected Gaussian and Hermite components, quadrature otherwise with
/// panels no wider than a quarter period. BudgetError for u > u_max,
/// DomainError for u < 0.
double cosine_transform(const TestFunction& g, double u,
                        const CosineOptions& opts = {});

/// Quadrature route for every kind.
double cosine_transform_numeric(const TestFunction& g, double u,
                                const CosineOptions& opts = {});

struct KernelSeries {
  Complex value;
  Complex chi_term;
  double truncation_bound = 0.0;
  double rounding_bound = 0.0;
  int terms = 0;
};

/// F+(1_{t>a} t^-s)(u) = chi(s) u^(s-1)
///   - 2 sum_{j<J} (-1)^j (2 pi u)^(2j) a^(2j+1-s) / ((2j)! (2j+1-s)).
/// Requires Re s < 1, u > 0, 2 pi u a < J; ConvergenceError when the first
/// omitted term exceeds 1e-8.
KernelSeries kernel_series(double a, Complex s, double u, int J);

/// F+(g)(u) as (1/2pi) int ghat(1/2 + i tau) K(a, 1/2 - i tau, u) d tau over
/// |tau| <= t_cut with the kernel series K; a is the lower support point.
double cosine_transform_kernel_route(const TestFunction& g, double u,
                                     double t_cut, double abs_tol = 1e-11);

struct MellinSamples {
  std::vector<Complex> s_values;
  std::vector<Complex> values;
  int panels = 0;
  int nodes = 0;

  std::string budget() const;
  void write_csv(const std::string& path) const;
};

/// Samples of mellin_right at 1/2 + i tau, tau = 0, spacing, ..., t_cut.
MellinSamples sample_critical_line(const TestFunction& g, double t_cut,
                                   double spacing = 0.05);

struct InverseMellin {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// (1/2pi) int G(1/2 + i tau) t^(-1/2 - i tau) d tau over |tau| <= t_cut by
/// the trapezoid rule. Samples must start at tau = 0, be equally spaced with
/// spacing <= 0.05, and satisfy G(conj s) = conj G(s). For G the right
/// Mellin transform of g the result is g(1/t)/t. TruncationError if
/// |G(1/2 + i t_cut)| > 1e-6.
InverseMellin inverse_mellin(const MellinSamples& samples, double t,
                             double t_cut);

}  // namespace sonine
