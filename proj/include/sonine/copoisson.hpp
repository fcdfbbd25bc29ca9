#pragma once

#include <functional>
#include <vector>

#include "sonine/mellin.hpp"
#include "sonine/report.hpp"

namespace sonine {

struct PoissonSums {
  double transform_side = 0.0;  // sum_{n in Z} F+(phi)(n u)
  double function_side = 0.0;   // (1/u) sum_{m in Z} phi(m/u)
  double residual = 0.0;
  long transform_terms = 0;
  long function_terms = 0;
  double transform_threshold = 0.0;
};

struct PoissonOptions {
  double term_threshold = 1e-16;
  int quiet_run = 8;
  long max_terms = 100000;
};

/// Both sides of the scaled Poisson formula. Each side stops once quiet_run
/// consecutive terms fall below term_threshold (compactly supported phi:
/// once m/u leaves the support). For compactly supported phi the transform
/// side uses max(term_threshold, 1e-14 |phi|_1), the quadrature floor.
/// TruncationError past max_terms.
PoissonSums poisson_sums(const TestFunction& phi, double u,
                         const PoissonOptions& opts = {});

/// |transform side - function side|.
double poisson_residual(const TestFunction& phi, double u,
                        const PoissonOptions& opts = {});

/// sum_{n >= 1} phi(n t) - (int_0^inf phi) / t. DomainError for t <= 0.
double modified_poisson_sum(const TestFunction& phi, double t);

/// zeta(s) int phi(t) t^(s-1) dt against int (modified Poisson sum) t^(s-1) dt
/// for compactly supported phi; DomainError unless 0 < Re s < 1.
IdentityReport muntz_check(const TestFunction& phi, const std::vector<Complex>& s_grid);

/// sum_{n=1}^{n_max} g(t/n)/n - ghat(1). TruncationError when
/// n_max < ceil(t/a) for support [a, A].
double copoisson_sum(const TestFunction& g, double t, long n_max);
double copoisson_sum(const TestFunction& g, double t);

/// F(t) = sum_{n >= 1} g(t/n)/n - ghat(1) for compactly supported g, with
/// the dual function P(t) = sum_{m >= 1} g(m/t)/t - ghat(0). F+ maps P to F.
class CoPoissonElement {
public:
  /// With rescale, g is dilated so that its support satisfies a A = 1.
  explicit CoPoissonElement(TestFunction g, bool rescale = true);

  const TestFunction& g() const { return g_; }
  double a() const { return g_.a(); }
  double A() const { return g_.b(); }
  double rescale_factor() const { return rescale_; }
  double g0() const { return g0_; }
  double g1() const { return g1_; }
  double c_low() const { return -g1_; }
  double c_dual() const { return -g0_; }
  long n_max(double t) const;

  double value(double t) const;
  double dual(double t) const;
  /// zeta(s) ghat(s).
  Complex mellin(Complex s) const;

  /// Height beyond which |F| (resp. |P|) stays below threshold.
  double value_cutoff(double threshold = 1e-13) const;
  double dual_cutoff(double threshold = 1e-13) const;

  /// F+(F)(u) by quadrature, plateau on (0, a) integrated in closed form.
  std::vector<double> transform_value(const std::vector<double>& u) const;
  /// F+(P)(u) by quadrature, plateau on (0, 1/A) in closed form.
  std::vector<double> transform_dual(const std::vector<double>& u) const;
  /// Right Mellin transform of F by quadrature, plateau in closed form.
  std::vector<Complex> mellin_numeric(const std::vector<Complex>& s) const;

  /// L2 norm of F on (0, inf).
  double norm() const;

private:
  TestFunction g_;
  double rescale_ = 1.0;
  double g0_ = 0.0;
  double g1_ = 0.0;
};

/// Default probe grid {a/2, a, 2a, 1, A/2, A, 2A}.
std::vector<double> default_u_grid(double a, double A);

/// F+ of the dual function against the co-Poisson sum on u_grid.
IdentityReport copoisson_identity_check(const TestFunction& g,
                                        const std::vector<double>& u_grid);

/// zeta(s) ghat(s) against the quadrature Mellin transform of F.
IdentityReport copoisson_mellin_check(const TestFunction& g,
                                      const std::vector<Complex>& s_grid);

/// 2 int_0^plateau_end c cos(2 pi t u) dt + 2 int_plateau_end^end f(t) cos(2 pi t u) dt
/// for each u, sharing evaluations of f.
std::vector<double> cosine_with_plateau(const std::function<double(double)>& f,
                                        double plateau_value, double plateau_end,
                                        double end, const std::vector<double>& u,
                                        double abs_tol);

}  // namespace sonine
