#pragma once

#include <string>
#include <vector>

#include "sonine/contour.hpp"
#include "sonine/specfun.hpp"

namespace sonine {

/// Riemann zeta by Euler-Maclaurin (N = max(20, 2|Im s|), Bernoulli terms
/// through B12) for Re s >= 0, functional equation chi(s) zeta(1 - s) below.
/// PoleError at s = 1.
Complex zeta(Complex s);

/// (s - 1) zeta(s), regular at s = 1 where it equals 1.
Complex zeta_times_s_minus_one(Complex s);

/// Entire xi(s) = s(s - 1)/2 pi^(-s/2) Gamma(s/2) zeta(s).
Complex xi(Complex s);

/// pi^(-s/2) Gamma(s/2) zeta(s); PoleError at s = 0 and s = 1.
Complex completed_zeta(Complex s);

/// Hardy Z(t) = exp(i theta(t)) zeta(1/2 + it), real. DomainError for t <= 0.
double hardy_z(double t);

struct ZetaZero {
  int index = 0;
  double gamma = 0.0;
  int multiplicity = 1;
  Complex zeta_prime{0.0, 0.0};

  Complex rho() const { return {0.5, gamma}; }
};

enum class ZeroSource { computed, ingested };

struct ZeroTable {
  std::vector<ZetaZero> zeros;
  ZeroSource source = ZeroSource::computed;
  double height_limit = 0.0;
  double tolerance = 1e-10;
  std::vector<double> block_bounds;
  int sign_changes = 0;
  int argument_count = -1;
  double grid_step = 0.05;

  std::size_t size() const { return zeros.size(); }
  bool empty() const { return zeros.empty(); }
  /// Number of stored ordinates strictly below t.
  int count_below(double t) const;
  /// First n zeros (n clipped to size), block bounds recomputed.
  ZeroTable prefix(std::size_t n) const;
};

struct FindZerosOptions {
  double grid_step = 0.05;
  double tolerance = 1e-10;
  int jobs = 1;
  bool cross_check = true;
  int max_retries = 3;
};

/// All zeros 1/2 + i gamma with 0 < gamma < t_max from sign changes of
/// hardy_z, refined by bisection and secant steps. The count is compared
/// against an argument-principle count of xi on [-1, 2] x [0, t_max]; on
/// disagreement the grid is halved and the scan repeated, and
/// MissedZeroError is raised once retries are exhausted.
/// DomainError unless 10 <= t_max <= 500.
ZeroTable find_zeros(double t_max, const FindZerosOptions& opts = {});

/// Argument-principle count of xi on [-1, 2] x [0, t]. The top edge may be
/// nudged upward; the report carries the rectangle actually used.
ZeroCountReport xi_zero_count(double t, int jobs = 1);

/// zeta'(rho) by a Cauchy integral on |s - rho| = radius with 32 trapezoid
/// nodes.
Complex zeta_prime_cauchy(Complex rho, double radius = 1e-3, int nodes = 32);

/// zeta'(rho) by 5-point central differences along the imaginary direction.
Complex zeta_prime_central(Complex rho, double h = 1e-3);

/// zeta'(rho) for a stored zero. The Cauchy value is cross-checked against
/// central differences (ConvergenceError if they differ by more than 1e-8
/// relative); MultipleZeroError if |zeta'| < 1e-6 or multiplicity != 1.
Complex zeta_prime_at_zero(const ZetaZero& z, double radius = 1e-3);

struct RefinedZero {
  Complex offset;      // refined rho minus the stored rho
  Complex zeta_value;  // zeta at the refined rho
  int steps = 0;
};

/// Newton steps rho <- rho - zeta(rho)/zeta'(rho) in 113-bit arithmetic
/// (Euler-Maclaurin, Bernoulli terms through B30), with zeta' the stored
/// double value; stops when the step falls below 1e-30. zeta_value is the
/// 113-bit zeta at the refined point rounded to double.
RefinedZero refine_zero_extended(const ZetaZero& z);

/// Zero-table text file: one ordinate per line, '#' comments, ascending.
/// Ordinates are validated by |zeta(1/2 + i gamma)| <= 1e-6 and zeta' is
/// recomputed. ParseError carries the 1-based line; ValidationError lists the
/// failing ordinates.
ZeroTable load_zero_table(const std::string& path);
void save_zero_table(const ZeroTable& table, const std::string& path);

/// Zero table for height t_max read from cache_dir if a matching cache file
/// exists, otherwise computed and written. An empty cache_dir falls back to
/// $SONINE_CACHE_DIR; with neither set, nothing is cached.
ZeroTable cached_zero_table(double t_max, const std::string& cache_dir,
                            const FindZerosOptions& opts = {});

/// Heights T_n between zeros: midpoints of gaps of width >= 0.3, subsampled
/// so that T_n > n, closed by gamma_last + 1. DomainError on an empty table.
std::vector<double> block_partition(const ZeroTable& table);

}  // namespace sonine
