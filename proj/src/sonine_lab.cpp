#include "sonine/sonine_lab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>

#include "sonine/errors.hpp"
#include "sonine/specfun.hpp"

namespace sonine {

nlohmann::json MomentNormalization::to_json() const {
  return {{"g_star", g_star.describe()}, {"alpha", alpha},     {"beta", beta},
          {"condition", condition},      {"moment0", moment0}, {"moment1", moment1}};
}

MomentNormalization normalize_moments(const TestFunction& g) {
  if (!g.compact()) throw DomainError("normalize_moments: requires compact support");
  const double a = g.a();
  const double A = g.b();
  const double c = std::sqrt(a * A);
  const TestFunction tilted = make_bump(a, A, BumpShape{2.0});
  const TestFunction b1 = tilted + tilted.reflected(c);
  const TestFunction b2 = tilted - tilted.reflected(c);
  Eigen::Matrix2d m;
  m << mellin_right(b1, 0.0).real(), mellin_right(b2, 0.0).real(),
      mellin_right(b1, 1.0).real(), mellin_right(b2, 1.0).real();
  const Eigen::Vector2d rhs(-mellin_right(g, 0.0).real(), -mellin_right(g, 1.0).real());
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  const auto sv = svd.singularValues();
  MomentNormalization out;
  out.condition = sv(1) > 0.0 ? sv(0) / sv(1) : std::numeric_limits<double>::infinity();
  if (!(out.condition <= 1e8)) {
    throw DegenerateError("normalize_moments: singular bump family (condition " +
                          format_number(out.condition) + ")");
  }
  const Eigen::Vector2d x = m.partialPivLu().solve(rhs);
  out.alpha = x(0);
  out.beta = x(1);
  out.g_star = g;
  if (out.alpha != 0.0) out.g_star = out.g_star + b1 * out.alpha;
  if (out.beta != 0.0) out.g_star = out.g_star + b2 * out.beta;
  out.moment0 = mellin_right(out.g_star, 0.0).real();
  out.moment1 = mellin_right(out.g_star, 1.0).real();
  return out;
}

TestFunction symmetric_seed(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("symmetric_seed: requires 0 < a < 1");
  const TestFunction b = make_bump(a, 1.0 / a);
  return b + b.reflected();
}

nlohmann::json SupportProfile::to_json() const {
  return {{"lambda", lambda},       {"mu", mu},       {"a_index", a_index},
          {"threshold", threshold}, {"grid_step", grid_step}, {"flagged", flagged}};
}

const char* to_string(SonineKind k) {
  return k == SonineKind::copoisson ? "copoisson" : "hermite";
}

SonineElement SonineElement::from_copoisson(const TestFunction& g, bool rescale) {
  SonineElement e;
  e.kind_ = SonineKind::copoisson;
  e.copoisson_.emplace(g, rescale);
  return e;
}

SonineElement SonineElement::from_hermite(std::vector<double> coeffs) {
  SonineElement e;
  e.kind_ = SonineKind::hermite;
  e.hermite_ = make_hermite(coeffs);
  e.coeffs_ = std::move(coeffs);
  return e;
}

const CoPoissonElement& SonineElement::copoisson() const {
  if (!copoisson_) throw DomainError("SonineElement: not a co-Poisson element");
  return *copoisson_;
}

double SonineElement::value(double t) const {
  if (kind_ == SonineKind::copoisson) return copoisson_->value(t);
  return hermite_.value(t);
}

double SonineElement::transform(double u) const {
  if (kind_ == SonineKind::copoisson) return copoisson_->dual(u);
  CosineOptions opts;
  opts.u_max = std::numeric_limits<double>::infinity();
  return cosine_transform(hermite_, u, opts);
}

SonineElement SonineElement::dilated(double c) const {
  if (!(c > 0.0)) throw DomainError("SonineElement::dilated: factor must be positive");
  SonineElement e = *this;
  e.dilation *= c;
  if (kind_ == SonineKind::copoisson) {
    e.copoisson_.emplace(copoisson_->g().dilated(c), false);
  } else {
    e.hermite_ = hermite_.dilated(c);
  }
  return e;
}

double SonineElement::norm() const {
  if (kind_ == SonineKind::copoisson) return copoisson_->norm();
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

Complex SonineElement::mellin(Complex s) const {
  if (kind_ == SonineKind::copoisson) return copoisson_->mellin(s);
  return mellin_right(hermite_, s);
}

double SonineElement::vanishing(double a, double eps) const {
  double peak = 0.0;
  for (double t = eps; t <= a - eps + 1e-12; t += 1e-3) {
    peak = std::max({peak, std::abs(value(t)), std::abs(transform(t))});
  }
  return peak / norm();
}

double SonineElement::scan_end() const {
  if (kind_ == SonineKind::copoisson) {
    return 4.0 * std::max(copoisson_->A(), 1.0 / copoisson_->a());
  }
  return 6.0 * std::max(dilation, 1.0 / dilation);
}

void SonineElement::write_csv(const std::string& path, double t_end, double step) const {
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path);
  out << "t,f\n";
  const long n = static_cast<long>(std::floor(t_end / step + 1e-9));
  for (long k = 1; k <= n; ++k) {
    const double t = k * step;
    out << format_number(t) << "," << format_number(value(t)) << "\n";
  }
}

nlohmann::json SonineElement::sidecar() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["dilation"] = dilation;
  j["vanish_tol"] = vanish_tol;
  if (kind_ == SonineKind::copoisson) {
    j["g"] = copoisson_->g().describe();
    j["a"] = copoisson_->a();
    j["A"] = copoisson_->A();
    j["ghat0"] = copoisson_->g0();
    j["ghat1"] = copoisson_->g1();
  } else {
    j["parity"] = parity;
    j["coefficients"] = coeffs_;
  }
  return j;
}

std::vector<double> chebyshev_points(int k) {
  if (k < 1) throw DomainError("chebyshev_points: requires k >= 1");
  std::vector<double> out(k);
  for (int j = 0; j < k; ++j) {
    out[j] = 0.5 * (1.0 - std::cos((2.0 * (j + 1) - 1.0) * kPi / (2.0 * k)));
  }
  return out;
}

namespace {

struct ParityResult {
  bool feasible = false;
  double peak = std::numeric_limits<double>::infinity();
  Eigen::VectorXd coeffs;
};

Eigen::MatrixXd even_basis(int M, const std::vector<double>& t) {
  Eigen::MatrixXd out(t.size(), M);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto psi = hermite_even(M, t[i]);
    for (int m = 0; m < M; ++m) out(static_cast<Eigen::Index>(i), m) = psi[m];
  }
  return out;
}

ParityResult minimax_in_parity(const Eigen::MatrixXd& colloc, const Eigen::MatrixXd& grid,
                               int parity, int iterations) {
  const Eigen::Index M = colloc.cols();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index m = parity; m < M; m += 2) idx.push_back(m);
  const Eigen::Index d = static_cast<Eigen::Index>(idx.size());
  ParityResult out;
  if (d == 0) return out;
  Eigen::MatrixXd C(colloc.rows(), d);
  Eigen::MatrixXd G(grid.rows(), d);
  for (Eigen::Index j = 0; j < d; ++j) {
    C.col(j) = colloc.col(idx[j]);
    G.col(j) = grid.col(idx[j]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  const double tol = 1e-12 * (sv.size() ? sv(0) : 1.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol ? 1 : 0;
  if (rank >= d) return out;
  const Eigen::MatrixXd null = svd.matrixV().rightCols(d - rank);
  const Eigen::MatrixXd B = G * null;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(B.rows(), 1.0 / B.rows());
  Eigen::VectorXd best;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::MatrixXd gram = B.transpose() * w.asDiagonal() * B;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Eigen::VectorXd y = eig.eigenvectors().col(0);
    const Eigen::VectorXd f = B * y;
    const double peak = f.cwiseAbs().maxCoeff();
    if (peak < out.peak) {
      out.peak = peak;
      best = y;
    }
    w = w.cwiseProduct(f.cwiseAbs());
    const double total = w.sum();
    if (!(total > 0.0)) break;
    w /= total;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(M);
  const Eigen::VectorXd sub = null * best;
  for (Eigen::Index j = 0; j < d; ++j) c(idx[j]) = sub(j);
  Eigen::Index lead = 0;
  c.cwiseAbs().maxCoeff(&lead);
  if (c(lead) < 0.0) c = -c;
  out.feasible = true;
  out.coeffs = c;
  return out;
}

}  // namespace

SonineElement build_k1_hermite(int M, const std::vector<double>& points, const K1Options& opts) {
  if (M < 1) throw DomainError("build_k1_hermite: requires M >= 1");
  if (static_cast<int>(points.size()) > M - 1) {
    throw DomainError("build_k1_hermite: more collocation points than M - 1");
  }
  for (double t : points) {
    if (!(t > 0.0 && t < 1.0)) throw DomainError("build_k1_hermite: points must lie in (0, 1)");
  }
  if (opts.grid_points < 2) throw DomainError("build_k1_hermite: grid too small");
  std::vector<double> grid(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i) {
    grid[i] = opts.eps + (1.0 - 2.0 * opts.eps) * i / (opts.grid_points - 1);
  }
  const Eigen::MatrixXd colloc = even_basis(M, points);
  const Eigen::MatrixXd basis = even_basis(M, grid);
  const ParityResult even = minimax_in_parity(colloc, basis, 0, opts.iterations);
  const ParityResult odd = minimax_in_parity(colloc, basis, 1, opts.iterations);
  if (!even.feasible && !odd.feasible) {
    throw DegenerateError("build_k1_hermite: trivial null space, increase M");
  }
  const bool use_odd = odd.feasible && (!even.feasible || odd.peak < even.peak);
  const ParityResult& pick = use_odd ? odd : even;
  std::vector<double> coeffs(pick.coeffs.data(), pick.coeffs.data() + pick.coeffs.size());
  SonineElement e = SonineElement::from_hermite(std::move(coeffs));
  e.parity = use_odd ? 1 : 0;
  // F+ f = +-f within one parity, so one profile covers both.
  e.vanish_tol = pick.peak / e.norm();
  return e;
}

SupportProfile support_profile(const std::function<double(double)>& f,
                               const std::function<double(double)>& ff, double threshold,
                               double t_end, double step) {
  if (!(threshold > 0.0 && threshold <= 1e-2)) {
    throw DomainError("support_profile: threshold must lie in (0, 1e-2]");
  }
  if (!(t_end > step)) throw DomainError("support_profile: t_end must exceed the grid step");
  const long n = static_cast<long>(std::floor(t_end / step));
  auto first_above = [&](const std::function<double(double)>& h) {
    std::vector<double> v(n);
    double peak = 0.0;
    for (long k = 0; k < n; ++k) {
      v[k] = std::abs(h((k + 1) * step));
      peak = std::max(peak, v[k]);
    }
    if (!(peak > 0.0)) throw DegenerateError("support_profile: function vanishes on the grid");
    for (long k = 0; k < n; ++k) {
      if (v[k] > threshold * peak) return (k + 1) * step;
    }
    return t_end;
  };
  SupportProfile p;
  p.threshold = threshold;
  p.grid_step = step;
  p.lambda = first_above(f);
  p.mu = first_above(ff);
  p.a_index = std::sqrt(p.lambda * p.mu);
  p.flagged = p.lambda <= step * 1.5 || p.mu <= step * 1.5;
  return p;
}

SupportProfile support_profile(const SonineElement& f, double threshold, double t_end) {
  if (t_end <= 0.0) t_end = f.scan_end();
  return support_profile([&](double t) { return f.value(t); },
                         [&](double u) { return f.transform(u); }, threshold, t_end);
}

ZeroCountReport zero_density_report(const TestFunction& g_star, double T,
                                    const ZeroTable& table, const ContourOptions& opts) {
  if (!g_star.compact()) throw DomainError("zero_density_report: requires compact support");
  if (!(T > 1.0)) throw DomainError("zero_density_report: requires T > 1");
  if (table.height_limit < T + 1.0) {
    throw DomainError("zero_density_report: zero table stops below T + 1");
  }
  const double m0 = std::abs(mellin_right(g_star, 0.0));
  const double m1 = std::abs(mellin_right(g_star, 1.0));
  if (m0 > 1e-8 || m1 > 1e-8) {
    throw DomainError("zero_density_report: requires ghat*(0) = ghat*(1) = 0");
  }
  // Keep the top edge (and its possible nudges) clear of zeta zeros.
  double top = T;
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& z : table.zeros) {
      if (std::abs(z.gamma - top) < 0.05) {
        top = z.gamma + 0.05;
        moved = true;
      }
    }
  }
  const CachedMellin transform(g_star, top + 1.0);
  const AnalyticFunction gm = [&](Complex s) { return transform(s); };
  const ZeroCountReport part = count_zeros_rectangle(gm, Complex(-2.0, 0.25), Complex(3.0, top), opts);
  const AnalyticFunction h = [&](Complex s) {
    return std::exp(log_completed_factor(s)) * zeta(s) * transform(s);
  };
  ContourOptions fixed = opts;
  fixed.max_nudges = 0;
  ZeroCountReport rep = count_zeros_rectangle(h, part.lower_left, part.upper_right, fixed);
  rep.nudges = part.nudges;
  rep.contour_budget += part.contour_budget;
  rep.transform_component = part.winding_count;
  rep.zeta_component = table.count_below(rep.upper_right.imag()) -
                       table.count_below(rep.lower_left.imag());
  rep.predicted = T / (2.0 * kPi) * std::log(T);
  rep.ratio = rep.winding_count / rep.predicted;
  return rep;
}

}  // namespace sonine
