#include "sonine/mellin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sonine/errors.hpp"
#include "sonine/quadrature.hpp"

namespace sonine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kHermiteScale = std::sqrt(2.0) * std::pow(2.0 * kPi, 0.25);
constexpr double kHermiteSplit = 0.25;
constexpr double kHermiteEnd = 12.0;

double bump_base(const Component& c, double x) {
  if (x <= c.lo || x >= c.hi) return 0.0;
  const double w = c.hi - c.lo;
  const double e = -1.0 / ((x - c.lo) * (c.hi - x)) + 4.0 / (w * w);
  const double v = std::exp(e);
  return c.tilt == 0.0 ? v : std::pow(x, c.tilt) * v;
}

double hermite_base(const std::vector<double>& coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  const std::vector<double> psi = hermite_even(static_cast<int>(coeffs.size()), x);
  double s = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) s += coeffs[m] * psi[m];
  return s;
}

double base_value(const Component& c, double x) {
  switch (c.kind) {
    case TestKind::bump:
      return bump_base(c, x);
    case TestKind::gaussian:
      return std::exp(-kPi * c.lambda * x * x);
    case TestKind::hermite:
      return hermite_base(c.hermite, x);
    default:
      return 0.0;
  }
}

// Taylor coefficients a_n of f(t) = sum_n a_n t^(2n) for a Hermite sum.
std::vector<double> hermite_taylor(const std::vector<double>& coeffs) {
  const int count = static_cast<int>(coeffs.size());
  const int n_max = 2 * count - 2;
  // p_n(x) with phi_n(x) = pi^(-1/4) exp(-x^2/2) p_n(x).
  std::vector<std::vector<double>> p(n_max + 1);
  p[0] = {1.0};
  if (n_max >= 1) p[1] = {0.0, std::sqrt(2.0)};
  for (int n = 1; n < n_max; ++n) {
    std::vector<double> next(n + 2, 0.0);
    const double a = std::sqrt(2.0 / (n + 1));
    const double b = std::sqrt(static_cast<double>(n) / (n + 1));
    for (int k = 0; k <= n; ++k) next[k + 1] += a * p[n][k];
    for (int k = 0; k <= n - 1; ++k) next[k] -= b * p[n - 1][k];
    p[n + 1] = std::move(next);
  }
  // Q(y), y = t^2: x^(2k) = (2 pi)^k y^k.
  std::vector<double> q(count, 0.0);
  const double pref = kHermiteScale * std::pow(kPi, -0.25);
  for (int m = 0; m < count; ++m) {
    const auto& pm = p[2 * m];
    double scale = 1.0;
    for (int k = 0; 2 * k < static_cast<int>(pm.size()); ++k) {
      q[k] += pref * coeffs[m] * pm[2 * k] * scale;
      scale *= 2.0 * kPi;
    }
  }
  // Multiply by exp(-pi y).
  const int total = count + 40;
  std::vector<double> a(total, 0.0);
  std::vector<double> e(total, 0.0);
  e[0] = 1.0;
  for (int j = 1; j < total; ++j) e[j] = e[j - 1] * (-kPi) / j;
  for (int n = 0; n < total; ++n) {
    double s = 0.0;
    for (int k = 0; k <= std::min(n, count - 1); ++k) s += q[k] * e[n - k];
    a[n] = s;
  }
  return a;
}

double hermite_norm1(const std::vector<double>& coeffs) {
  double s = 0.0;
  for (double c : coeffs) s += std::abs(c);
  return s;
}

Complex hermite_mellin_base(const std::vector<double>& coeffs, Complex s) {
  const std::vector<double> a = hermite_taylor(coeffs);
  const double d = kHermiteSplit;
  Complex head = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const Complex e = 2.0 * static_cast<double>(n) + 1.0 - s;
    if (e == 0.0) {
      throw PoleError("mellin_right: pole of the Hermite transform", s);
    }
    head += a[n] * std::exp(e * std::log(d)) / e;
  }
  auto f = [&](double t) {
    return Complex(hermite_base(coeffs, t)) * std::exp(-s * std::log(t));
  };
  const double scale = hermite_norm1(coeffs);
  const double phase = std::abs(s.imag()) * std::log(kHermiteEnd / d);
  const int start = std::max(16, static_cast<int>(phase / 8.0));
  const auto tail = integrate_doubling(f, d, kHermiteEnd, 1e-13, 1e-15 * scale,
                                       start, 1 << 16);
  return head + tail.value;
}

struct MellinDetail {
  Complex value;
  int panels = 0;
};

MellinDetail bump_mellin_base(const Component& c, Complex s) {
  auto f = [&](double t) { return bump_base(c, t) * std::exp(-s * std::log(t)); };
  auto fabs = [&](double t) { return bump_base(c, t) * std::pow(t, -s.real()); };
  const double l1 = integrate_panels(fabs, c.lo, c.hi, 16);
  // Roughly one panel per radian of t^(-i Im s) across the support.
  const double phase = std::abs(s.imag()) * std::log(c.hi / c.lo);
  const int start = std::max(4, static_cast<int>(phase / 8.0));
  const auto r = integrate_doubling(f, c.lo, c.hi, 1e-12, 1e-14 * l1, start, 1 << 12);
  return {r.value, r.panels};
}

MellinDetail component_mellin(const Component& c, Complex s) {
  Complex pre = c.weight;
  Complex sp = s;
  if (c.reflect > 0.0) {
    pre *= std::exp((1.0 - 2.0 * s) * std::log(c.reflect));
    sp = 1.0 - s;
  }
  if (c.dilation != 1.0) {
    pre *= std::exp((0.5 - sp) * std::log(c.dilation));
  }
  MellinDetail d;
  switch (c.kind) {
    case TestKind::bump:
      d = bump_mellin_base(c, sp);
      break;
    case TestKind::gaussian:
      d.value = 0.5 * std::exp(0.5 * (sp - 1.0) * std::log(kPi * c.lambda) +
                               log_gamma(0.5 * (1.0 - sp)));
      break;
    case TestKind::hermite:
      d.value = hermite_mellin_base(c.hermite, sp);
      break;
    default:
      throw DomainError("mellin_right: unsupported component");
  }
  d.value *= pre;
  return d;
}

MellinDetail mellin_detail(const TestFunction& g, Complex s) {
  MellinDetail total{0.0, 0};
  for (const auto& c : g.components()) {
    const MellinDetail d = component_mellin(c, s);
    total.value += d.value;
    total.panels = std::max(total.panels, d.panels);
  }
  return total;
}

// Upper integration limit for non-compact components.
double decay_end(const Component& c) {
  double end = 0.0;
  if (c.kind == TestKind::gaussian) end = std::sqrt(46.0 / (kPi * c.lambda));
  if (c.kind == TestKind::hermite) end = kHermiteEnd;
  return end * c.dilation;
}

double numeric_end(const TestFunction& g) {
  if (g.compact()) return g.b();
  double end = 0.0;
  for (const auto& c : g.components()) {
    if (c.reflect > 0.0 && c.kind != TestKind::bump) {
      throw DomainError("numeric route: reflected non-compact component");
    }
    end = std::max(end, c.kind == TestKind::bump ? c.support().second : decay_end(c));
  }
  return end;
}

bool closed_form_cosine(const TestFunction& g) {
  for (const auto& c : g.components()) {
    if (c.kind == TestKind::bump || c.reflect > 0.0) return false;
  }
  return !g.components().empty();
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace

const char* to_string(TestKind k) {
  switch (k) {
    case TestKind::bump:
      return "bump";
    case TestKind::gaussian:
      return "gaussian";
    case TestKind::hermite:
      return "hermite-combination";
    case TestKind::combination:
      return "combination";
  }
  return "unknown";
}

std::vector<double> hermite_even(int count, double t) {
  std::vector<double> out(std::max(count, 0), 0.0);
  if (count <= 0) return out;
  const double x = std::sqrt(2.0 * kPi) * t;
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  out[0] = cur * kHermiteScale;
  const int n_max = 2 * count - 2;
  for (int n = 0; n < n_max; ++n) {
    const double next =
        std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    if ((n + 1) % 2 == 0) out[(n + 1) / 2] = cur * kHermiteScale;
  }
  return out;
}

double Component::value(double t) const {
  t = std::abs(t);
  double factor = weight;
  double x = t;
  if (reflect > 0.0) {
    if (t == 0.0) return 0.0;
    factor *= reflect / t;
    x = reflect * reflect / t;
  }
  if (dilation != 1.0) {
    factor /= std::sqrt(dilation);
    x /= dilation;
  }
  return factor * base_value(*this, x);
}

std::pair<double, double> Component::support() const {
  double a = 0.0;
  double b = kInf;
  if (kind == TestKind::bump) {
    a = lo;
    b = hi;
  }
  a *= dilation;
  b *= dilation;
  if (reflect > 0.0) {
    const double c2 = reflect * reflect;
    const double na = (b == kInf) ? 0.0 : c2 / b;
    const double nb = (a == 0.0) ? kInf : c2 / a;
    a = na;
    b = nb;
  }
  return {a, b};
}

TestFunction::TestFunction(Component c) { push(std::move(c)); }

void TestFunction::push(Component c) {
  const auto sup = c.support();
  if (parts_.empty()) {
    support_ = sup;
  } else {
    support_.first = std::min(support_.first, sup.first);
    support_.second = std::max(support_.second, sup.second);
  }
  parts_.push_back(std::move(c));
}

double TestFunction::value(double t) const {
  double s = 0.0;
  for (const auto& c : parts_) s += c.value(t);
  return s;
}

TestKind TestFunction::kind() const {
  if (parts_.empty()) return TestKind::combination;
  const TestKind k = parts_.front().kind;
  for (const auto& c : parts_) {
    if (c.kind != k) return TestKind::combination;
  }
  if (k == TestKind::hermite) return TestKind::hermite;
  return parts_.size() == 1 ? k : TestKind::combination;
}

bool TestFunction::compact() const {
  return !parts_.empty() && support_.first > 0.0 && std::isfinite(support_.second);
}

TestFunction TestFunction::operator+(const TestFunction& o) const {
  TestFunction r = *this;
  for (const auto& c : o.parts_) r.push(c);
  return r;
}

TestFunction TestFunction::operator-(const TestFunction& o) const {
  return *this + o * -1.0;
}

TestFunction TestFunction::operator*(double w) const {
  TestFunction r = *this;
  for (auto& c : r.parts_) c.weight *= w;
  return r;
}

TestFunction TestFunction::dilated(double d) const {
  if (!(d > 0.0)) throw DomainError("dilated: factor must be positive");
  TestFunction r;
  for (Component c : parts_) {
    if (c.reflect > 0.0) {
      c.reflect *= std::sqrt(d);
    } else {
      c.dilation *= d;
    }
    r.push(std::move(c));
  }
  return r;
}

TestFunction TestFunction::reflected(double c) const {
  if (!(c > 0.0)) throw DomainError("reflected: center must be positive");
  TestFunction r;
  for (Component p : parts_) {
    if (p.reflect > 0.0) {
      p.dilation *= (c * c) / (p.reflect * p.reflect);
      p.reflect = 0.0;
    } else {
      p.reflect = c;
    }
    r.push(std::move(p));
  }
  return r;
}

std::string TestFunction::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& c = parts_[i];
    if (i) out << " + ";
    out << fmt(c.weight) << "*" << to_string(c.kind);
    if (c.kind == TestKind::bump) {
      out << "[" << fmt(c.lo) << "," << fmt(c.hi) << "]";
      if (c.tilt != 0.0) out << "^tilt=" << fmt(c.tilt);
    } else if (c.kind == TestKind::gaussian) {
      out << "(lambda=" << fmt(c.lambda) << ")";
    } else {
      out << "(M=" << c.hermite.size() << ")";
    }
    if (c.dilation != 1.0) out << ".dil(" << fmt(c.dilation) << ")";
    if (c.reflect > 0.0) out << ".refl(" << fmt(c.reflect) << ")";
  }
  return out.str();
}

TestFunction make_bump(double a, double A, BumpShape shape) {
  if (!(a > 0.0) || !(A > a) || !std::isfinite(A)) {
    throw DomainError("make_bump: requires 0 < a < A < inf");
  }
  Component c;
  c.kind = TestKind::bump;
  c.lo = a;
  c.hi = A;
  c.tilt = shape.tilt;
  return TestFunction(c);
}

TestFunction make_gaussian(double c, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("make_gaussian: lambda must be positive");
  Component p;
  p.kind = TestKind::gaussian;
  p.weight = c;
  p.lambda = lambda;
  return TestFunction(p);
}

TestFunction make_hermite(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("make_hermite: no coefficients");
  Component p;
  p.kind = TestKind::hermite;
  p.hermite = std::move(coeffs);
  return TestFunction(p);
}

Complex mellin_right(const TestFunction& g, Complex s) {
  return mellin_detail(g, s).value;
}

Complex mellin_right_numeric(const TestFunction& g, Complex s) {
  auto f = [&](double t) { return g.value(t) * std::exp(-s * std::log(t)); };
  if (g.compact()) {
    auto fabs = [&](double t) { return std::abs(g.value(t)) * std::pow(t, -s.real()); };
    const double l1 = integrate_panels(fabs, g.a(), g.b(), 32);
    return integrate_doubling(f, g.a(), g.b(), 1e-12, 1e-14 * l1, 8, 1 << 14).value;
  }
  if (s.real() >= 1.0) {
    throw DomainError("mellin_right_numeric: requires Re s < 1 without compact support");
  }
  const double end = numeric_end(g);
  // Geometric panels towards 0; the last sliver uses g(t) ~ g(0).
  const double stop = end * std::ldexp(1.0, -48);
  auto fabs = [&](double t) { return std::abs(f(t)); };
  double scale = 0.0;
  for (double h = end; h > stop; h *= 0.5) scale += integrate_panels(fabs, 0.5 * h, h, 1);
  Complex total = 0.0;
  double hi = end;
  while (hi > stop) {
    const double lo = 0.5 * hi;
    total += integrate_adaptive(f, lo, hi, 1e-16 * scale, 2);
    hi = lo;
  }
  total += g.value(0.0) * std::exp((1.0 - s) * std::log(hi)) / (1.0 - s);
  return total;
}

CachedMellin::CachedMellin(const TestFunction& g, double im_max) {
  if (!g.compact()) throw DomainError("CachedMellin: requires compact support");
  const double lo = std::log(g.a());
  const double hi = std::log(g.b());
  // About one radian of t^(-i Im s) per quarter panel.
  const int panels = std::max(128, static_cast<int>(std::ceil(std::abs(im_max) * (hi - lo) / 4.0)));
  const auto& gl = gauss_legendre();
  const double h = (hi - lo) / panels;
  log_t_.reserve(static_cast<std::size_t>(panels) * kGaussOrder);
  weight_.reserve(log_t_.capacity());
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (int k = 0; k < kGaussOrder; ++k) {
      const double u = c + 0.5 * h * gl.x[k];
      const double t = std::exp(u);
      const double v = g.value(t);
      if (v == 0.0) continue;
      log_t_.push_back(u);
      weight_.push_back(0.5 * h * gl.w[k] * v * t);
    }
  }
}

Complex CachedMellin::operator()(Complex s) const {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < log_t_.size(); ++k) {
    sum += weight_[k] * std::exp(-s * log_t_[k]);
  }
  return sum;
}

double cosine_transform_numeric(const TestFunction& g, double u,
                                const CosineOptions& opts) {
  if (u < 0.0) throw DomainError("cosine_transform: requires u >= 0");
  if (u > opts.u_max) throw BudgetError("cosine_transform: u exceeds u_max");
  const double lo = g.compact() ? g.a() : 0.0;
  const double hi = numeric_end(g);
  auto f = [&](double t) { return 2.0 * std::cos(2.0 * kPi * t * u) * g.value(t); };
  auto fabs = [&](double t) { return 2.0 * std::abs(g.value(t)); };
  const double l1 = integrate_panels(fabs, lo, hi, 64);
  const int start = std::max(4, static_cast<int>(std::ceil((hi - lo) * 4.0 * u)));
  return integrate_doubling(f, lo, hi, opts.rel_tol, 1e-14 * l1, start, 1 << 18).value;
}

double cosine_transform(const TestFunction& g, double u, const CosineOptions& opts) {
  if (u < 0.0) throw DomainError("cosine_transform: requires u >= 0");
  if (u > opts.u_max) throw BudgetError("cosine_transform: u exceeds u_max");
  if (!closed_form_cosine(g)) return cosine_transform_numeric(g, u, opts);
  double total = 0.0;
  for (const auto& c : g.components()) {
    const double d = c.dilation;
    const double v = u * d;
    double base = 0.0;
    if (c.kind == TestKind::gaussian) {
      base = std::exp(-kPi * v * v / c.lambda) / std::sqrt(c.lambda);
    } else {
      const auto psi = hermite_even(static_cast<int>(c.hermite.size()), v);
      for (std::size_t m = 0; m < psi.size(); ++m) {
        base += (m % 2 == 0 ? 1.0 : -1.0) * c.hermite[m] * psi[m];
      }
    }
    total += c.weight * std::sqrt(d) * base;
  }
  return total;
}

KernelSeries kernel_series(double a, Complex s, double u, int J) {
  if (!(a > 0.0)) throw DomainError("kernel_series: requires a > 0");
  if (!(s.real() < 1.0)) throw DomainError("kernel_series: requires Re s < 1");
  if (!(u > 0.0)) throw DomainError("kernel_series: requires u > 0");
  const double x = 2.0 * kPi * u * a;
  if (!(x < J)) throw DomainError("kernel_series: requires 2 pi u a < J");
  KernelSeries r;
  const Complex a_pow = std::exp((1.0 - s) * std::log(a));
  Complex sum = 0.0;
  double abs_sum = 0.0;
  double w = 1.0;  // x^(2j) / (2j)!
  for (int j = 0; j < J; ++j) {
    if (j > 0) w *= x * x / ((2.0 * j - 1.0) * (2.0 * j));
    const Complex term = (j % 2 == 0 ? 1.0 : -1.0) * w * a_pow / (2.0 * j + 1.0 - s);
    sum += term;
    abs_sum += std::abs(term);
  }
  const double w_next = w * x * x / ((2.0 * J - 1.0) * (2.0 * J));
  r.truncation_bound = 2.0 * w_next * std::abs(a_pow / (2.0 * J + 1.0 - s));
  r.rounding_bound = 2.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  r.terms = J;
  if (r.truncation_bound > 1e-8) {
    throw ConvergenceError("kernel_series: truncation above 1e-8, increase J");
  }
  r.chi_term = chi(s) * std::exp((s - 1.0) * std::log(u));
  r.value = r.chi_term - 2.0 * sum;
  return r;
}

double cosine_transform_kernel_route(const TestFunction& g, double u, double t_cut,
                                     double abs_tol) {
  if (!g.compact()) throw DomainError("kernel route: requires compact support");
  const double a = g.a();
  const double x = 2.0 * kPi * u * a;
  const int J = std::max(20, static_cast<int>(std::ceil(0.5 * (std::exp(1.0) * x + 40.0))));
  auto f = [&](double tau) {
    const Complex s(0.5, tau);
    const KernelSeries k = kernel_series(a, 1.0 - s, u, J);
    return (mellin_right(g, s) * k.value).real() / kPi;
  };
  return integrate_adaptive(f, 0.0, t_cut, abs_tol, 8);
}

std::string MellinSamples::budget() const {
  return std::to_string(panels) + "x" + std::to_string(nodes);
}

void MellinSamples::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("MellinSamples: cannot write " + path);
  out << "im_s,re_value,im_value,budget\n";
  const std::string b = budget();
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << fmt(s_values[i].imag()) << "," << fmt(values[i].real()) << ","
        << fmt(values[i].imag()) << "," << b << "\n";
  }
}

MellinSamples sample_critical_line(const TestFunction& g, double t_cut, double spacing) {
  if (!(spacing > 0.0) || !(t_cut >= 0.0)) {
    throw DomainError("sample_critical_line: bad grid");
  }
  MellinSamples m;
  m.nodes = kGaussOrder;
  const long n = std::lround(t_cut / spacing);
  for (long k = 0; k <= n; ++k) {
    const Complex s(0.5, k * spacing);
    const MellinDetail d = mellin_detail(g, s);
    m.s_values.push_back(s);
    m.values.push_back(d.value);
    m.panels = std::max(m.panels, d.panels);
  }
  return m;
}

InverseMellin inverse_mellin(const MellinSamples& samples, double t, double t_cut) {
  if (!(t > 0.0)) throw DomainError("inverse_mellin: requires t > 0");
  const auto& sv = samples.s_values;
  if (sv.size() < 2 || sv[0] != Complex(0.5, 0.0)) {
    throw DomainError("inverse_mellin: samples must start at s = 1/2");
  }
  const double h = sv[1].imag() - sv[0].imag();
  if (!(h > 0.0) || h > 0.05 + 1e-12) {
    throw DomainError("inverse_mellin: sample spacing must be <= 0.05");
  }
  const long k_end = std::lround(t_cut / h);
  if (k_end < 1 || static_cast<std::size_t>(k_end) >= sv.size() ||
      std::abs(sv[k_end].imag() - t_cut) > 1e-9 * std::max(1.0, t_cut)) {
    throw DomainError("inverse_mellin: t_cut not on the sample grid");
  }
  const double log_t = std::log(t);
  double acc = 0.0;
  for (long k = 0; k <= k_end; ++k) {
    const double w = (k == 0 || k == k_end) ? 1.0 : 2.0;
    acc += w * (samples.values[k] * std::exp(-sv[k] * log_t)).real();
  }
  InverseMellin r;
  r.value = acc * h / (2.0 * kPi);
  const double g_end = std::abs(samples.values[k_end]);
  r.tail_bound = g_end * t_cut / (2.0 * kPi * std::sqrt(t));
  if (g_end > 1e-6) {
    throw TruncationError("inverse_mellin: |G| at t_cut exceeds 1e-6");
  }
  return r;
}

}  // namespace sonine
