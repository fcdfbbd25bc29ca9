#include <quadmath.h>

#include <algorithm>
#include <cmath>

#include "sonine/errors.hpp"
#include "sonine/zeta.hpp"

namespace sonine {
namespace {

using Real = __float128;
using Cplx = __complex128;

Cplx make(Real re, Real im) {
  Cplx z;
  __real__ z = re;
  __imag__ z = im;
  return z;
}

Cplx widen(Complex z) { return make(z.real(), z.imag()); }

Complex narrow(Cplx z) {
  return {static_cast<double>(crealq(z)), static_cast<double>(cimagq(z))};
}

// B_2k = kBernoulli[k-1][0] / kBernoulli[k-1][1], k = 1..15.
constexpr long long kBernoulli[15][2] = {
    {1, 6},         {-1, 30},       {1, 42},          {-1, 30},
    {5, 66},        {-691, 2730},   {7, 6},           {-3617, 510},
    {43867, 798},   {-174611, 330}, {854513, 138},    {-236364091, 2730},
    {8553103, 6},   {-23749461029LL, 870}, {8615841276005LL, 14322}};

Cplx zeta_extended(Cplx s) {
  const double im = std::abs(static_cast<double>(cimagq(s)));
  const int n = std::max(100, static_cast<int>(std::ceil(4.0 * im)));
  Cplx sum = make(0, 0);
  for (int k = 1; k < n; ++k) sum += cexpq(-s * logq(static_cast<Real>(k)));
  const Real log_n = logq(static_cast<Real>(n));
  const Cplx n_pow = cexpq(-s * log_n);
  const Cplx one = make(1, 0);
  sum += n_pow * static_cast<Real>(n) / (s - one);
  sum += n_pow / static_cast<Real>(2);
  // s (s+1) ... (s+2k-2) / (2k)! * N^(-s-2k+1)
  Cplx term = s * n_pow / static_cast<Real>(n);
  for (int k = 1; k <= 15; ++k) {
    if (k == 1) {
      term /= static_cast<Real>(2);
    } else {
      const Real a = static_cast<Real>(2 * k - 3);
      const Real b = static_cast<Real>(2 * k - 2);
      term *= (s + make(a, 0)) * (s + make(b, 0));
      term /= static_cast<Real>(2 * k - 1) * static_cast<Real>(2 * k);
      term /= static_cast<Real>(n) * static_cast<Real>(n);
    }
    const Real bern = static_cast<Real>(kBernoulli[k - 1][0]) / static_cast<Real>(kBernoulli[k - 1][1]);
    sum += bern * term;
  }
  return sum;
}

}  // namespace

RefinedZero refine_zero_extended(const ZetaZero& z) {
  if (z.multiplicity != 1 || std::abs(z.zeta_prime) < 1e-6) {
    throw MultipleZeroError("refine_zero_extended: zero is not simple or zeta' unknown");
  }
  const Cplx base = widen(z.rho());
  const Cplx deriv = widen(z.zeta_prime);
  Cplx rho = base;
  RefinedZero out;
  for (int it = 0; it < 12; ++it) {
    const Cplx step = zeta_extended(rho) / deriv;
    rho -= step;
    out.steps = it + 1;
    if (cabsq(step) < static_cast<Real>(1e-30)) break;
  }
  out.offset = narrow(rho - base);
  out.zeta_value = narrow(zeta_extended(rho));
  return out;
}

}  // namespace sonine
