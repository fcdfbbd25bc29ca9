#pragma once

#include <complex>

namespace sonine {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Principal branch of log Gamma: analytic on C minus (-inf, 0], real on the
/// positive axis. Differs from log(Gamma(s)) by multiples of 2*pi*i, which
/// keeps it continuous along vertical lines (needed by theta and by phase
/// tracking in argument-principle counts).
///
/// Lanczos (g = 607/128, 15 terms) for Re s >= 1/2, |Im s| <= 20; Stirling
/// with upward shift otherwise; the left half-plane is reached by the
/// recurrence log Gamma(s) = log Gamma(s + n) - sum log(s + k).
/// Throws PoleError at s = 0, -1, -2, ...
Complex log_gamma(Complex s);

/// chi(s) = pi^(s - 1/2) Gamma((1 - s)/2) / Gamma(s/2), the multiplier in
/// zeta(s) = chi(s) zeta(1 - s). Evaluated through log-Gamma differences.
/// Returns exactly 0 at s = 0, -2, -4, ...; PoleError at s = 1, 3, 5, ...
Complex chi(Complex s);

/// pi^(-s/2) Gamma(s/2). PoleError at s = 0, -2, -4, ...
Complex completed_factor(Complex s);

/// log of completed_factor, principal log-Gamma branch.
Complex log_completed_factor(Complex s);

/// Riemann-Siegel theta, continuous branch, theta(t) = Im logGamma(1/4 + it/2)
/// - (t/2) log pi. Asymptotic series for t >= 10, direct log-Gamma below.
/// Throws DomainError for t <= 0.
double rs_theta(double t);

/// Same quantity computed straight from log_gamma at every t > 0.
double rs_theta_direct(double t);

/// True if s is exactly a real integer <= 0.
bool is_nonpositive_integer(Complex s);

}  // namespace sonine
