#include "sonine/quadrature.hpp"

#include "sonine/specfun.hpp"

namespace sonine {
namespace {

GaussLegendre build_gauss_legendre() {
  GaussLegendre gl{};
  const int n = kGaussOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre gl = build_gauss_legendre();
  return gl;
}

}  // namespace sonine
