#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sonine {

/// mu(n) for 1 <= n <= N; mu[0] is unused and stored as 0.
struct MoebiusTable {
  long N = 0;
  std::vector<std::int8_t> mu;

  int operator()(long n) const { return mu.at(static_cast<std::size_t>(n)); }
  long squarefree_count() const;
};

struct SieveOptions {
  int jobs = 1;
  std::size_t memory_budget = std::size_t(512) << 20;
  long segment = 1L << 18;
};

/// Segmented sieve. Segments are independent and written in place, so the
/// table does not depend on jobs. DomainError unless 1 <= N <= 1e9,
/// BudgetError if the table would exceed memory_budget bytes.
MoebiusTable moebius_sieve(long N, const SieveOptions& opts = {});

}  // namespace sonine
