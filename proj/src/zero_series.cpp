#include "sonine/zero_series.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "sonine/errors.hpp"
#include "sonine/report.hpp"
#include "sonine/specfun.hpp"

namespace sonine {
namespace {

constexpr const char* kDefaultConvention =
    "T_n: midpoints of zero gaps >= 0.3 with T_n > n, closed at gamma_last + 1";

// Groups per-zero contributions (already conjugate-paired) into blocks.
ZeroSeriesTrace build_trace(const std::vector<Complex>& terms, const ZeroTable& zeros,
                            const BlockBounds& bounds_in) {
  const BlockBounds bounds = bounds_in.empty() ? block_partition(zeros) : bounds_in;
  ZeroSeriesTrace trace;
  trace.convention = bounds_in.empty() ? kDefaultConvention : "custom block bounds";
  std::size_t k = 0;
  Complex partial = 0.0;
  for (std::size_t n = 0; n < bounds.size(); ++n) {
    TraceBlock blk;
    blk.index = static_cast<int>(n);
    blk.T = bounds[n];
    Complex contrib = 0.0;
    while (k < zeros.size() && zeros.zeros[k].gamma < bounds[n]) {
      contrib += terms[k];
      ++blk.zeros;
      ++k;
    }
    partial += contrib;
    blk.partial = partial;
    blk.block_abs = std::abs(contrib);
    trace.blocks.push_back(blk);
  }
  trace.value = partial;
  trace.tail_estimate = trace.blocks.empty() ? 0.0 : trace.blocks.back().block_abs;
  return trace;
}

void require_aligned(const std::vector<Complex>& g, const ZeroTable& zeros, const char* who) {
  if (g.size() != zeros.size()) {
    throw DomainError(std::string(who) + ": samples not aligned with the zero table");
  }
  for (const auto& z : zeros.zeros) {
    if (z.multiplicity != 1) throw MultipleZeroError(std::string(who) + ": zero is not simple");
    if (z.zeta_prime == Complex(0.0, 0.0)) {
      throw MultipleZeroError(std::string(who) + ": zeta' missing or zero");
    }
  }
}

Complex completed_factor_at(Complex s) { return std::exp(log_completed_factor(s)); }

// Neumaier-compensated sum of mu(n)/n exp(-(x/n)^2) for lo <= n < hi.
double moebius_gauss_sum(const MoebiusTable& t, double x, long lo, long hi) {
  double sum = 0.0;
  double comp = 0.0;
  for (long n = lo; n < hi; ++n) {
    const int m = t.mu[static_cast<std::size_t>(n)];
    if (m == 0) continue;
    const double r = x / static_cast<double>(n);
    const double v = m * std::exp(-r * r) / static_cast<double>(n);
    const double s = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  return sum + comp;
}

// Same over [1, N], chunked at fixed boundaries and reduced in order.
double moebius_gauss(const MoebiusTable& t, double x, long lo, long hi, int jobs) {
  constexpr long kChunk = 1L << 20;
  const long chunks = (hi - lo + kChunk - 1) / kChunk;
  std::vector<double> parts(static_cast<std::size_t>(chunks), 0.0);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long c = next++; c < chunks; c = next++) {
      const long a = lo + c * kChunk;
      parts[c] = moebius_gauss_sum(t, x, a, std::min(hi, a + kChunk));
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min<long>(jobs, chunks); ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  double sum = 0.0;
  double comp = 0.0;
  for (double v : parts) {
    const double s = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
    sum = s;
  }
  return sum + comp;
}

}  // namespace

void ZeroSeriesTrace::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path);
  out << "block_index,T_n,partial_re,partial_im,block_abs\n";
  for (const auto& b : blocks) {
    out << b.index << "," << format_number(b.T) << "," << format_number(b.partial.real()) << ","
        << format_number(b.partial.imag()) << "," << format_number(b.block_abs) << "\n";
  }
}

nlohmann::json ZeroSeriesTrace::to_json() const {
  nlohmann::json blks = nlohmann::json::array();
  for (const auto& b : blocks) {
    blks.push_back({{"index", b.index},
                    {"T", b.T},
                    {"zeros", b.zeros},
                    {"partial", complex_json(b.partial)},
                    {"block_abs", b.block_abs}});
  }
  return {{"value", complex_json(value)},
          {"tail_estimate", tail_estimate},
          {"convention", convention},
          {"blocks", blks}};
}

ZeroSeriesTrace residue_series(const std::vector<Complex>& g_at_zeros, Complex Z,
                               const ZeroTable& zeros, const BlockBounds& bounds) {
  require_aligned(g_at_zeros, zeros, "residue_series");
  if (std::abs(Z - 1.0) < 1e-12) throw DomainError("residue_series: Z = 1 excluded");
  for (const auto& z : zeros.zeros) {
    if (std::abs(Z - z.rho()) < 1e-6 || std::abs(Z - std::conj(z.rho())) < 1e-6) {
      throw DomainError("residue_series: Z collides with a zero");
    }
  }
  const Complex zz = zeta(Z);
  std::vector<Complex> terms(zeros.size());
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const auto& z = zeros.zeros[k];
    const Complex c = g_at_zeros[k] / z.zeta_prime;
    terms[k] = zz * (c / (Z - z.rho()) + std::conj(c) / (Z - std::conj(z.rho())));
  }
  return build_trace(terms, zeros, bounds);
}

ZeroSeriesTrace sum_over_zeros(const std::vector<Complex>& g_at_zeros, const ZeroTable& zeros,
                               const BlockBounds& bounds) {
  require_aligned(g_at_zeros, zeros, "sum_over_zeros");
  std::vector<Complex> terms(zeros.size());
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const Complex c = g_at_zeros[k] / zeros.zeros[k].zeta_prime;
    terms[k] = c + std::conj(c);
  }
  return build_trace(terms, zeros, bounds);
}

RamanujanLhs ramanujan_lhs(double a, long N, const MoebiusTable& table) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("ramanujan_lhs: requires a > 0");
  if (N < 2 || table.N < N) throw DomainError("ramanujan_lhs: requires 2 <= N <= table.N");
  RamanujanLhs r;
  r.a = a;
  r.b = kPi / a;
  r.N = N;
  if (std::abs(r.a - r.b) <= 4.0 * std::numeric_limits<double>::epsilon() * a) {
    r.b = r.a;
    return r;
  }
  const long half = N / 2;
  const double sa_half = moebius_gauss(table, r.a, 1, half + 1, 1);
  const double sb_half = moebius_gauss(table, r.b, 1, half + 1, 1);
  const double sa = sa_half + moebius_gauss(table, r.a, half + 1, N + 1, 1);
  const double sb = sb_half + moebius_gauss(table, r.b, half + 1, N + 1, 1);
  r.value = std::sqrt(r.a) * sa - std::sqrt(r.b) * sb;
  r.half_value = std::sqrt(r.a) * sa_half - std::sqrt(r.b) * sb_half;
  r.tail_estimate = std::abs(r.value - r.half_value) / (std::sqrt(2.0) - 1.0);
  return r;
}

RamanujanLhs ramanujan_lhs(double a, long N, int jobs) {
  SieveOptions opts;
  opts.jobs = jobs;
  return ramanujan_lhs(a, N, moebius_sieve(N, opts));
}

RamanujanRhs ramanujan_rhs(double b, const ZeroTable& zeros, const BlockBounds& bounds) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("ramanujan_rhs: requires b > 0");
  if (zeros.empty()) throw DomainError("ramanujan_rhs: empty zero table");
  std::vector<Complex> g(zeros.size());
  const double log_b = std::log(b);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    const Complex rho = zeros.zeros[k].rho();
    g[k] = std::exp(rho * log_b + log_gamma(0.5 * (1.0 - rho)));
  }
  RamanujanRhs r;
  r.b = b;
  r.trace = sum_over_zeros(g, zeros, bounds);
  const double scale = -1.0 / (2.0 * std::sqrt(b));
  for (auto& blk : r.trace.blocks) {
    blk.partial *= scale;
    blk.block_abs *= std::abs(scale);
  }
  r.trace.value *= scale;
  r.trace.tail_estimate *= std::abs(scale);
  r.value = r.trace.value.real();
  r.tail_bound = r.trace.tail_estimate;
  return r;
}

namespace {

Complex entry_at(const ZetaZero& zi, const ZetaZero& zj, bool conjugate) {
  if (zi.multiplicity != 1 || zj.multiplicity != 1) {
    throw MultipleZeroError("biorthogonality: zero is not simple");
  }
  const Complex rho_i = zi.rho();
  const Complex denom_i = zi.zeta_prime * completed_factor_at(rho_i);
  if (!conjugate && zi.index == zj.index && zi.gamma == zj.gamma) {
    return zeta_prime_central(rho_i) / zi.zeta_prime;
  }
  const RefinedZero r = refine_zero_extended(zj);
  Complex s = zj.rho() + r.offset;
  Complex zeta_s = r.zeta_value;
  if (conjugate) {
    s = std::conj(s);
    zeta_s = std::conj(zeta_s);
  }
  return completed_factor_at(s) * zeta_s / ((s - rho_i) * denom_i);
}

}  // namespace

Complex biorthogonality_entry(const ZetaZero& rho_i, const ZetaZero& rho_j) {
  return entry_at(rho_i, rho_j, false);
}

Complex biorthogonality_entry_conjugate(const ZetaZero& rho_i, const ZetaZero& rho_j) {
  return entry_at(rho_i, rho_j, true);
}

nlohmann::json BiorthogonalityReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : matrix) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(complex_json(v));
    rows.push_back(r);
  }
  return {{"matrix", rows},
          {"max_offdiag", max_offdiag},
          {"max_diag_err", max_diag_err},
          {"max_conjugate", max_conjugate},
          {"max_offdiag_double", max_offdiag_double}};
}

BiorthogonalityReport biorthogonality_matrix(const ZeroTable& zeros, std::size_t n) {
  if (n == 0 || n > zeros.size()) throw DomainError("biorthogonality_matrix: bad size");
  BiorthogonalityReport rep;
  rep.matrix.assign(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = biorthogonality_entry(zeros.zeros[i], zeros.zeros[j]);
      rep.matrix[i][j] = v;
      if (i == j) {
        rep.max_diag_err = std::max(rep.max_diag_err, std::abs(v - 1.0));
      } else {
        rep.max_offdiag = std::max(rep.max_offdiag, std::abs(v));
        const ZetaZero& zi = zeros.zeros[i];
        const Complex s = zeros.zeros[j].rho();
        const Complex plain = completed_factor_at(s) * zeta(s) /
                              ((s - zi.rho()) * zi.zeta_prime * completed_factor_at(zi.rho()));
        rep.max_offdiag_double = std::max(rep.max_offdiag_double, std::abs(plain));
      }
      const Complex c = biorthogonality_entry_conjugate(zeros.zeros[i], zeros.zeros[j]);
      rep.max_conjugate = std::max(rep.max_conjugate, std::abs(c));
    }
  }
  return rep;
}

}  // namespace sonine
