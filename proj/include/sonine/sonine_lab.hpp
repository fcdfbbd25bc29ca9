#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sonine/contour.hpp"
#include "sonine/copoisson.hpp"
#include "sonine/mellin.hpp"
#include "sonine/zeta.hpp"

namespace sonine {

struct MomentNormalization {
  TestFunction g_star;
  double alpha = 0.0;
  double beta = 0.0;
  double condition = 0.0;
  double moment0 = 0.0;  // ghat*(0)
  double moment1 = 0.0;  // ghat*(1)

  nlohmann::json to_json() const;
};

/// g* = g + alpha b1 + beta b2 with ghat*(0) = ghat*(1) = 0, where
/// b1 = b + R_c b, b2 = b - R_c b, b the tilt-2 bump on the support [a, A]
/// of g and c = sqrt(a A). DegenerateError if the 2x2 system has condition
/// number above 1e8.
MomentNormalization normalize_moments(const TestFunction& g);

/// b + I(b) for the bump b on [a, 1/a]: the seed used for zero counting.
TestFunction symmetric_seed(double a);

struct SupportProfile {
  double lambda = 0.0;
  double mu = 0.0;
  double a_index = 0.0;
  double threshold = 0.0;
  double grid_step = 1e-3;
  // lambda or mu at the first grid point: no vanishing interval detected.
  bool flagged = false;

  nlohmann::json to_json() const;
};

enum class SonineKind { copoisson, hermite };

const char* to_string(SonineKind k);

/// A function f on (0, inf) with f and F+(f) (approximately) vanishing on
/// an initial interval: either the co-Poisson sum of a compactly supported
/// g, or a finite even Hermite expansion.
class SonineElement {
public:
  static SonineElement from_copoisson(const TestFunction& g, bool rescale = true);
  static SonineElement from_hermite(std::vector<double> coeffs);

  SonineKind kind() const { return kind_; }
  double value(double t) const;
  /// F+(f)(u).
  double transform(double u) const;
  /// t -> f(t/c)/sqrt(c).
  SonineElement dilated(double c) const;
  double norm() const;

  /// Hermite coefficients (empty for co-Poisson elements).
  const std::vector<double>& coefficients() const { return coeffs_; }
  /// Underlying compactly supported g (co-Poisson elements only).
  const CoPoissonElement& copoisson() const;
  /// Test function f itself for Hermite elements.
  const TestFunction& hermite() const { return hermite_; }

  /// Right Mellin transform of f: zeta(s) ghat(s) or the Hermite transform.
  Complex mellin(Complex s) const;

  /// max(|f|, |F+ f|) over the grid of [eps, a - eps] (step 1e-3) divided
  /// by norm().
  double vanishing(double a, double eps = 1e-3) const;

  double vanish_tol = 0.0;
  int parity = -1;
  double dilation = 1.0;

  /// Default right end for support scans.
  double scan_end() const;

  void write_csv(const std::string& path, double t_end, double step) const;
  nlohmann::json sidecar() const;

private:
  SonineKind kind_ = SonineKind::hermite;
  std::optional<CoPoissonElement> copoisson_;
  std::vector<double> coeffs_;
  TestFunction hermite_;
};

struct K1Options {
  int grid_points = 2001;
  double eps = 1e-3;
  int iterations = 300;
};

/// k points in (0, 1) at Chebyshev spacing.
std::vector<double> chebyshev_points(int k);

/// Element f = sum_m c_m psi_{2m}, m < M, with f(t_j) = 0 and F+f(t_j) = 0 at
/// the collocation points. Since F+ psi_{2m} = (-1)^m psi_{2m} the
/// constraints split by the parity of m; within each parity the null space
/// of the collocation matrix is searched for the unit vector minimizing
/// max |f| on [eps, 1 - eps] (Lawson reweighting), and the better parity is
/// kept. DomainError if there are more than M - 1 points, DegenerateError
/// when both null spaces are trivial.
SonineElement build_k1_hermite(int M, const std::vector<double>& points,
                               const K1Options& opts = {});

/// lambda (resp. mu): first grid point t = step, 2 step, ... with
/// |f(t)| (resp. |F+ f(t)|) above threshold * max over the grid up to t_end.
/// DomainError unless 0 < threshold <= 1e-2, DegenerateError if the
/// function is zero on the grid.
SupportProfile support_profile(const SonineElement& f, double threshold,
                               double t_end = 0.0);
SupportProfile support_profile(const std::function<double(double)>& f,
                               const std::function<double(double)>& ff,
                               double threshold, double t_end, double step = 1e-3);

/// Zeros of pi^(-s/2) Gamma(s/2) zeta(s) ghat*(s) in [-2, 3] x [0.25, T],
/// counted by the argument principle and, separately, as the zeta zeros of
/// the table below the top edge plus the winding of ghat* alone. g* must
/// satisfy ghat*(0) = ghat*(1) = 0 (checked to 1e-8). DomainError if the
/// table does not reach T + 1.
ZeroCountReport zero_density_report(const TestFunction& g_star, double T,
                                    const ZeroTable& table,
                                    const ContourOptions& opts = {});

}  // namespace sonine
