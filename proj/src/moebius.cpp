#include "sonine/moebius.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "sonine/errors.hpp"

namespace sonine {
namespace {

std::vector<long> small_primes(long limit) {
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<long> primes;
  for (long p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes.push_back(p);
    for (long q = p * p; q <= limit; q += p) composite[q] = 1;
  }
  return primes;
}

void sieve_segment(long lo, long hi, const std::vector<long>& primes, std::int8_t* mu) {
  const long len = hi - lo;
  std::vector<std::uint32_t> rest(static_cast<std::size_t>(len));
  for (long i = 0; i < len; ++i) {
    rest[i] = static_cast<std::uint32_t>(lo + i);
    mu[i] = 1;
  }
  for (long p : primes) {
    if (p * p >= hi) break;
    for (long m = (lo + p - 1) / p * p; m < hi; m += p) {
      const long i = m - lo;
      mu[i] = static_cast<std::int8_t>(-mu[i]);
      rest[i] /= static_cast<std::uint32_t>(p);
    }
    const long pp = p * p;
    for (long m = (lo + pp - 1) / pp * pp; m < hi; m += pp) mu[m - lo] = 0;
  }
  // At most one prime factor above sqrt(hi) remains.
  for (long i = 0; i < len; ++i) {
    if (rest[i] > 1 && mu[i] != 0) mu[i] = static_cast<std::int8_t>(-mu[i]);
  }
}

}  // namespace

long MoebiusTable::squarefree_count() const {
  long count = 0;
  for (long n = 1; n <= N; ++n) count += mu[n] != 0 ? 1 : 0;
  return count;
}

MoebiusTable moebius_sieve(long N, const SieveOptions& opts) {
  if (N < 1 || N > 1000000000L) throw DomainError("moebius_sieve: requires 1 <= N <= 1e9");
  const std::size_t bytes = static_cast<std::size_t>(N) + 1 +
                            static_cast<std::size_t>(std::max(1, opts.jobs)) *
                                static_cast<std::size_t>(opts.segment) * 4;
  if (bytes > opts.memory_budget) {
    throw BudgetError("moebius_sieve: table needs " + std::to_string(bytes) +
                      " bytes, budget " + std::to_string(opts.memory_budget));
  }
  MoebiusTable t;
  t.N = N;
  t.mu.assign(static_cast<std::size_t>(N) + 1, 0);
  const auto primes = small_primes(static_cast<long>(std::sqrt(static_cast<double>(N))) + 1);
  const long seg = std::max(1024L, opts.segment);
  const long segments = (N + seg - 1) / seg;
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long k = next++; k < segments; k = next++) {
      const long lo = 1 + k * seg;
      const long hi = std::min(N + 1, lo + seg);
      sieve_segment(lo, hi, primes, t.mu.data() + lo);
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(segments)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return t;
}

}  // namespace sonine
