#include "sonine/specfun.hpp"

#include <array>
#include <cmath>

#include "sonine/errors.hpp"

namespace sonine {
namespace {

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

// B_{2k} / (2k (2k - 1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,        1.0 / 1260.0,
    -1.0 / 1680.0,     1.0 / 1188.0,        -691.0 / 360360.0,
    1.0 / 156.0,       -3617.0 / 122400.0};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);
const double kLogPi = std::log(kPi);

Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Valid for |z| >= 20 with Re z >= 1/2.
Complex stirling_log_gamma(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

Complex right_half_log_gamma(Complex z) {
  if (std::abs(z.imag()) <= 20.0) {
    return lanczos_log_gamma(z);
  }
  return stirling_log_gamma(z);
}

bool is_odd_positive_integer(Complex s) {
  if (s.imag() != 0.0 || s.real() < 1.0) return false;
  const double r = s.real();
  return r == std::floor(r) && std::fmod(r, 2.0) == 1.0;
}

bool is_nonpositive_even_integer(Complex s) {
  if (s.imag() != 0.0 || s.real() > 0.0) return false;
  const double r = s.real();
  return r == std::floor(r) && std::fmod(-r, 2.0) == 0.0;
}

}  // namespace

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

Complex log_gamma(Complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (is_nonpositive_integer(s)) {
    throw PoleError("log_gamma: pole of Gamma at a non-positive integer", s);
  }
  if (s.real() >= 0.5) {
    return right_half_log_gamma(s);
  }
  // Every log(s + k) has its cut on (-inf, -k], inside (-inf, 0], so the
  // shifted expression is the principal branch.
  const int n = static_cast<int>(std::ceil(0.5 - s.real()));
  Complex shift = 0.0;
  for (int k = 0; k < n; ++k) {
    shift += std::log(s + static_cast<double>(k));
  }
  return right_half_log_gamma(s + static_cast<double>(n)) - shift;
}

Complex chi(Complex s) {
  if (is_odd_positive_integer(s)) {
    throw PoleError("chi: pole of Gamma((1-s)/2)", s);
  }
  if (is_nonpositive_even_integer(s)) {
    return 0.0;
  }
  const Complex v = std::exp((s - 0.5) * kLogPi + log_gamma((1.0 - s) / 2.0) -
                             log_gamma(s / 2.0));
  return s.imag() == 0.0 ? Complex(v.real(), 0.0) : v;
}

Complex log_completed_factor(Complex s) {
  if (is_nonpositive_even_integer(s)) {
    throw PoleError("completed_factor: pole of Gamma(s/2)", s);
  }
  return -0.5 * s * kLogPi + log_gamma(s / 2.0);
}

Complex completed_factor(Complex s) {
  const Complex v = std::exp(log_completed_factor(s));
  return s.imag() == 0.0 ? Complex(v.real(), 0.0) : v;
}

double rs_theta_direct(double t) {
  if (!(t > 0.0)) {
    throw DomainError("rs_theta: requires t > 0");
  }
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

double rs_theta(double t) {
  if (!(t > 0.0)) {
    throw DomainError("rs_theta: requires t > 0");
  }
  if (t < 10.0) {
    return rs_theta_direct(t);
  }
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  // 1/48, 7/5760, 31/80640, 127/430080, 511/1216512
  const double tail =
      inv * (1.0 / 48.0 +
             inv2 * (7.0 / 5760.0 +
                     inv2 * (31.0 / 80640.0 +
                             inv2 * (127.0 / 430080.0 +
                                     inv2 * (511.0 / 1216512.0)))));
  return 0.5 * t * std::log(t / (2.0 * kPi)) - 0.5 * t - kPi / 8.0 + tail;
}

}  // namespace sonine
