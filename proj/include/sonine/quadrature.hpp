#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

#include "sonine/errors.hpp"

namespace sonine {

inline constexpr int kGaussOrder = 32;

/// Gauss-Legendre nodes and weights on [-1, 1], order 32.
struct GaussLegendre {
  std::array<double, kGaussOrder> x;
  std::array<double, kGaussOrder> w;
};

const GaussLegendre& gauss_legendre();

namespace detail {

template <class T>
double magnitude(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::abs(v);
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    return std::abs(v);
  } else {
    return v.abs().maxCoeff();
  }
}

template <class T>
T zero_like(const T& v) {
  if constexpr (std::is_arithmetic_v<T> ||
                std::is_same_v<T, std::complex<double>>) {
    return T(0);
  } else {
    return T::Zero(v.size());
  }
}

}  // namespace detail

/// Composite GL-32 with `panels` equal panels on [lo, hi].
template <class F>
auto integrate_panels(F&& f, double lo, double hi, int panels) {
  const auto& gl = gauss_legendre();
  const double h = (hi - lo) / panels;
  using T = std::decay_t<decltype(f(lo))>;
  T first = f(lo + 0.5 * h * (1.0 + gl.x[0]));
  T sum = detail::zero_like(first);
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (int k = 0; k < kGaussOrder; ++k) {
      const double t = c + 0.5 * h * gl.x[k];
      if (p == 0 && k == 0) {
        sum += gl.w[k] * first;
      } else {
        sum += gl.w[k] * f(t);
      }
    }
  }
  return T(sum * (0.5 * h));
}

template <class T>
struct QuadResult {
  T value;
  int panels = 0;
  double error = 0.0;
};

/// Doubles the panel count until two successive estimates differ by at most
/// rel_tol * |I| + abs_tol. Throws ConvergenceError past max_panels.
template <class F>
auto integrate_doubling(F&& f, double lo, double hi, double rel_tol,
                        double abs_tol, int start_panels = 4,
                        int max_panels = 4096) {
  using T = std::decay_t<decltype(f(lo))>;
  int panels = std::max(1, start_panels);
  T prev = integrate_panels(f, lo, hi, panels);
  while (true) {
    panels *= 2;
    if (panels > max_panels) {
      throw ConvergenceError("integrate_doubling: panel budget exhausted");
    }
    T cur = integrate_panels(f, lo, hi, panels);
    const double diff = detail::magnitude(T(cur - prev));
    if (diff <= rel_tol * detail::magnitude(cur) + abs_tol) {
      return QuadResult<T>{cur, panels, diff};
    }
    prev = cur;
  }
}

namespace detail {

template <class F, class T>
T adaptive_step(F& f, double lo, double hi, const T& whole, double tol,
                int depth, int& evals, int max_evals) {
  const double mid = 0.5 * (lo + hi);
  T left = integrate_panels(f, lo, mid, 1);
  T right = integrate_panels(f, mid, hi, 1);
  evals += 2 * kGaussOrder;
  T both = left + right;
  const double err = magnitude(T(both - whole));
  if (err <= tol || depth <= 0) {
    if (err > tol) {
      throw ConvergenceError("integrate_adaptive: depth limit reached");
    }
    return both;
  }
  if (evals > max_evals) {
    throw ConvergenceError("integrate_adaptive: evaluation budget exhausted");
  }
  T a = adaptive_step(f, lo, mid, left, 0.5 * tol, depth - 1, evals, max_evals);
  T b = adaptive_step(f, mid, hi, right, 0.5 * tol, depth - 1, evals, max_evals);
  return T(a + b);
}

}  // namespace detail

/// Recursive bisection with GL-32 panels under an absolute tolerance. The
/// integrand may return double, complex or an Eigen array (componentwise
/// maximum is used for the error test).
template <class F>
auto integrate_adaptive(F&& f, double lo, double hi, double abs_tol,
                        int initial_panels = 1, int max_depth = 40,
                        int max_evals = 20000000) {
  using T = std::decay_t<decltype(f(lo))>;
  const int n = std::max(1, initial_panels);
  const double h = (hi - lo) / n;
  int evals = 0;
  T total;
  for (int p = 0; p < n; ++p) {
    const double a = lo + p * h;
    const double b = (p + 1 == n) ? hi : a + h;
    T whole = integrate_panels(f, a, b, 1);
    evals += kGaussOrder;
    T part = detail::adaptive_step(f, a, b, whole, abs_tol / n, max_depth,
                                   evals, max_evals);
    if (p == 0) {
      total = part;
    } else {
      total += part;
    }
  }
  return total;
}

}  // namespace sonine
