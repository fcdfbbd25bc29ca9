#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "sonine/moebius.hpp"
#include "sonine/zeta.hpp"

namespace sonine {

struct TraceBlock {
  int index = 0;
  double T = 0.0;        // upper height of the block
  Complex partial;       // partial sum through this block
  double block_abs = 0;  // |contribution of this block|
  int zeros = 0;         // zeros with gamma > 0 in the block
};

/// Partial sums over zeros grouped by blocks T_{n-1} < gamma < T_n, each
/// zero paired with its conjugate.
struct ZeroSeriesTrace {
  std::vector<TraceBlock> blocks;
  Complex value;
  double tail_estimate = 0.0;
  std::string convention;

  void write_csv(const std::string& path) const;
  nlohmann::json to_json() const;
};

/// Bounds: block_partition(zeros) when empty.
using BlockBounds = std::vector<double>;

/// sum_rho (G(rho)/zeta'(rho)) zeta(Z)/(Z - rho), with G(conj rho) taken as
/// conj G(rho). g_at_zeros is aligned with zeros. DomainError for Z = 1 or
/// |Z - rho| < 1e-6 for a stored rho or its conjugate; MultipleZeroError
/// for non-simple zeros.
ZeroSeriesTrace residue_series(const std::vector<Complex>& g_at_zeros, Complex Z,
                               const ZeroTable& zeros, const BlockBounds& bounds = {});

/// sum_rho G(rho)/zeta'(rho) with the same pairing and blocks.
ZeroSeriesTrace sum_over_zeros(const std::vector<Complex>& g_at_zeros,
                               const ZeroTable& zeros, const BlockBounds& bounds = {});

struct RamanujanLhs {
  double a = 0.0;
  double b = 0.0;
  long N = 0;
  double value = 0.0;
  double half_value = 0.0;     // same with N/2
  double tail_estimate = 0.0;  // |value - half_value| / (sqrt 2 - 1), empirical
};

/// sqrt(a) S(a) - sqrt(b) S(b), S(x) = sum_{n <= N} mu(n)/n exp(-(x/n)^2),
/// b = pi/a; exactly 0 when |a - b| <= 4 eps a. DomainError unless a > 0
/// and table.N >= N >= 2.
RamanujanLhs ramanujan_lhs(double a, long N, const MoebiusTable& table);
RamanujanLhs ramanujan_lhs(double a, long N, int jobs = 1);

struct RamanujanRhs {
  double b = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
  ZeroSeriesTrace trace;
};

/// -(1/(2 sqrt b)) sum_rho b^rho Gamma((1 - rho)/2)/zeta'(rho) over the
/// table, conjugate-paired. tail_bound is the magnitude of the last block.
RamanujanRhs ramanujan_rhs(double b, const ZeroTable& zeros, const BlockBounds& bounds = {});

/// pi^(-s/2) Gamma(s/2) zeta(s) / ((s - rho_i) zeta'(rho_i) pi^(-rho_i/2)
/// Gamma(rho_i/2)) at s = rho_j. Off the diagonal zeta(rho_j) is taken at
/// rho_j refined in 113-bit arithmetic; on the diagonal the limit uses the
/// central-difference zeta'(rho_i) over the Cauchy value.
Complex biorthogonality_entry(const ZetaZero& rho_i, const ZetaZero& rho_j);
Complex biorthogonality_entry_conjugate(const ZetaZero& rho_i, const ZetaZero& rho_j);

struct BiorthogonalityReport {
  std::vector<std::vector<Complex>> matrix;
  double max_offdiag = 0.0;
  double max_diag_err = 0.0;
  double max_conjugate = 0.0;
  // Off-diagonal maximum with zeta evaluated in double at the stored zeros.
  double max_offdiag_double = 0.0;

  nlohmann::json to_json() const;
};

/// Matrix over the first n zeros, with the conjugate column rho_j -> conj rho_j.
BiorthogonalityReport biorthogonality_matrix(const ZeroTable& zeros, std::size_t n);

}  // namespace sonine
