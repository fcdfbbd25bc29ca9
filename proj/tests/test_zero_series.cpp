#include "doctest.h"

#include <cmath>

#include "sonine/errors.hpp"
#include "sonine/moebius.hpp"
#include "sonine/zero_series.hpp"

using namespace sonine;

namespace {
const ZeroTable& table() {
  static const ZeroTable t = find_zeros(150.0);
  return t;
}
}  // namespace

TEST_CASE("moebius values") {
  const MoebiusTable m = moebius_sieve(1000000);
  CHECK(m(1) == 1);
  CHECK(m(4) == 0);
  CHECK(m(6) == 1);
  CHECK(m(30) == -1);
  CHECK(m(997) == -1);
  CHECK(m.squarefree_count() == 607926);
  CHECK(std::abs(m.squarefree_count() - 6e6 / (kPi * kPi)) <= 2.0 * std::sqrt(1e6));
  CHECK_THROWS_AS(moebius_sieve(0), DomainError);
  SieveOptions tight;
  tight.memory_budget = 1000;
  CHECK_THROWS_AS(moebius_sieve(100000, tight), BudgetError);
}

TEST_CASE("moebius sieve does not depend on jobs") {
  SieveOptions two;
  two.jobs = 2;
  two.segment = 1000;
  const MoebiusTable a = moebius_sieve(200000);
  const MoebiusTable b = moebius_sieve(200000, two);
  CHECK(a.mu == b.mu);
}

TEST_CASE("ramanujan lhs symmetries") {
  const MoebiusTable m = moebius_sieve(400000);
  CHECK(ramanujan_lhs(std::sqrt(kPi), 400000, m).value == 0.0);
  const double a1 = ramanujan_lhs(1.0, 400000, m).value;
  const double api = ramanujan_lhs(kPi, 400000, m).value;
  CHECK(a1 == -api);
  const RamanujanLhs big = ramanujan_lhs(1.0, 400000, m);
  const RamanujanLhs small = ramanujan_lhs(1.0, 100000, m);
  CHECK(std::abs(big.value - small.value) < 3.0 * small.tail_estimate);
  CHECK_THROWS_AS(ramanujan_lhs(1.0, 500000, m), DomainError);
}

TEST_CASE("ramanujan rhs against mpmath") {
  const ZeroTable z50 = table().prefix(50);
  CHECK(std::abs(ramanujan_rhs(kPi, z50).value - 0.00002848814513385969246) < 1e-12);
  CHECK(std::abs(ramanujan_rhs(1.0, z50).value + 0.00002848814513385969246) < 1e-12);
  CHECK(std::abs(ramanujan_rhs(std::sqrt(kPi), z50).value) <= 1e-6);
  CHECK(std::abs(ramanujan_rhs(0.7, z50).value + ramanujan_rhs(kPi / 0.7, z50).value) < 1e-8);
  CHECK(ramanujan_rhs(1.0, table().prefix(30)).tail_bound <= 1e-9);
  const BlockBounds coarse = {50.0, 100.0, table().zeros[49].gamma + 1.0};
  CHECK(std::abs(ramanujan_rhs(1.0, z50).value - ramanujan_rhs(1.0, z50, coarse).value) < 1e-10);
}

TEST_CASE("residue series conventions") {
  const ZeroTable& t = table();
  std::vector<Complex> zero(t.size(), Complex(0.0, 0.0));
  CHECK(std::abs(sum_over_zeros(zero, t).value) == 0.0);
  CHECK_THROWS_AS(residue_series(zero, 1.0, t), DomainError);
  CHECK_THROWS_AS(residue_series(zero, t.zeros[3].rho(), t), DomainError);

  std::vector<Complex> g1, g2, mix;
  for (const auto& z : t.zeros) {
    g1.push_back(std::exp(-0.1 * z.rho()));
    g2.push_back(1.0 / (z.rho() * z.rho()));
    mix.push_back(2.0 * g1.back() - 3.0 * g2.back());
  }
  const ZeroSeriesTrace a = residue_series(g1, 2.0, t);
  const ZeroSeriesTrace b = residue_series(g2, 2.0, t);
  const ZeroSeriesTrace c = residue_series(mix, 2.0, t);
  REQUIRE(a.blocks.size() == c.blocks.size());
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const Complex expect = 2.0 * a.blocks[i].partial - 3.0 * b.blocks[i].partial;
    CHECK(std::abs(c.blocks[i].partial - expect) <= 1e-12 * (1.0 + std::abs(expect)));
    CHECK(std::abs(c.blocks[i].partial.imag()) <= 1e-12);
  }
}

TEST_CASE("biorthogonality entries") {
  const ZeroTable& t = table();
  CHECK(std::abs(biorthogonality_entry(t.zeros[0], t.zeros[0]) - 1.0) <= 1e-8);
  CHECK(std::abs(biorthogonality_entry(t.zeros[0], t.zeros[4])) <= 1e-10);
  CHECK(std::abs(biorthogonality_entry_conjugate(t.zeros[2], t.zeros[2])) <= 1e-10);
  const BiorthogonalityReport r = biorthogonality_matrix(t, 10);
  CHECK(r.max_offdiag <= 1e-8);
  CHECK(r.max_diag_err <= 1e-8);
  CHECK(r.max_conjugate <= 1e-8);
}

TEST_CASE("extended refinement") {
  const RefinedZero r = refine_zero_extended(table().zeros[0]);
  CHECK(std::abs(r.zeta_value) < 1e-25);
  CHECK(std::abs(0.5 + r.offset.real() - 0.5) < 1e-15);
  CHECK(std::abs(table().zeros[0].gamma + r.offset.imag() - 14.134725141734693790) < 1e-14);
}
