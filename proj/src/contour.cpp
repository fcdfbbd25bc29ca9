#include "sonine/contour.hpp"

#include <array>
#include <cmath>
#include <future>
#include <vector>

#include "sonine/errors.hpp"

namespace sonine {
namespace {

struct EdgeResult {
  double phase = 0.0;
  long evals = 0;
};

class PhaseJump : public std::exception {};

Complex checked(const AnalyticFunction& f, Complex z, long& evals) {
  const Complex v = f(z);
  ++evals;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v == 0.0) {
    throw PhaseJump();
  }
  return v;
}

double phase_step(const AnalyticFunction& f, Complex z1, Complex f1,
                  Complex z2, Complex f2, int depth, long& evals) {
  const double d = std::arg(f2 / f1);
  if (std::abs(d) <= 0.5 * kPi) return d;
  if (depth <= 0) throw PhaseJump();
  const Complex zm = 0.5 * (z1 + z2);
  const Complex fm = checked(f, zm, evals);
  return phase_step(f, z1, f1, zm, fm, depth - 1, evals) +
         phase_step(f, zm, fm, z2, f2, depth - 1, evals);
}

EdgeResult edge_phase(const AnalyticFunction& f, Complex from, Complex to,
                      const ContourOptions& opts) {
  EdgeResult r;
  const double len = std::abs(to - from);
  const int n = std::max(8, static_cast<int>(std::ceil(len * opts.nodes_per_unit)));
  Complex z_prev = from;
  Complex f_prev = checked(f, from, r.evals);
  for (int k = 1; k <= n; ++k) {
    const Complex z = (k == n) ? to : from + (to - from) * (double(k) / n);
    const Complex fz = checked(f, z, r.evals);
    r.phase += phase_step(f, z_prev, f_prev, z, fz, opts.max_bisections, r.evals);
    z_prev = z;
    f_prev = fz;
  }
  return r;
}

}  // namespace

nlohmann::json ZeroCountReport::to_json() const {
  nlohmann::json j;
  j["rectangle"] = {{"re_min", lower_left.real()},
                    {"im_min", lower_left.imag()},
                    {"re_max", upper_right.real()},
                    {"im_max", upper_right.imag()}};
  j["winding_raw"] = winding_raw;
  j["winding_count"] = winding_count;
  j["predicted"] = predicted;
  j["ratio"] = ratio;
  j["contour_budget"] = contour_budget;
  j["nudges"] = nudges;
  if (zeta_component >= 0) j["zeta_component"] = zeta_component;
  if (transform_component >= 0) j["transform_component"] = transform_component;
  if (zeta_component >= 0 && transform_component >= 0) {
    j["component_sum"] = zeta_component + transform_component;
    j["counts_agree"] = zeta_component + transform_component == winding_count;
  }
  return j;
}

ZeroCountReport count_zeros_rectangle(const AnalyticFunction& f, Complex lo,
                                      Complex hi, const ContourOptions& opts) {
  if (!(hi.real() > lo.real()) || !(hi.imag() > lo.imag())) {
    throw DomainError("count_zeros_rectangle: degenerate rectangle");
  }
  long budget = 0;
  for (int attempt = 0; attempt <= opts.max_nudges; ++attempt) {
    const double shift = attempt * opts.nudge;
    const Complex a(lo.real() - shift, lo.imag());
    const Complex c(hi.real() + shift, hi.imag() + shift);
    const Complex b(c.real(), a.imag());
    const Complex d(a.real(), c.imag());
    const std::array<std::pair<Complex, Complex>, 4> edges = {
        std::pair{a, b}, std::pair{b, c}, std::pair{c, d}, std::pair{d, a}};
    std::array<EdgeResult, 4> results{};
    bool ok = true;
    try {
      if (opts.jobs > 1) {
        std::array<std::future<EdgeResult>, 4> futs;
        for (int e = 0; e < 4; ++e) {
          futs[e] = std::async(std::launch::async, edge_phase, std::cref(f),
                               edges[e].first, edges[e].second, std::cref(opts));
        }
        for (int e = 0; e < 4; ++e) {
          try {
            results[e] = futs[e].get();
          } catch (const PhaseJump&) {
            ok = false;
          }
        }
      } else {
        for (int e = 0; e < 4; ++e) {
          results[e] = edge_phase(f, edges[e].first, edges[e].second, opts);
        }
      }
    } catch (const PhaseJump&) {
      ok = false;
    }
    double total = 0.0;
    for (const auto& r : results) {
      total += r.phase;
      budget += r.evals;
    }
    const double w = total / (2.0 * kPi);
    if (ok && std::abs(w - std::round(w)) <= 0.05) {
      ZeroCountReport rep;
      rep.lower_left = a;
      rep.upper_right = c;
      rep.winding_raw = w;
      rep.winding_count = static_cast<int>(std::lround(w));
      rep.contour_budget = budget;
      rep.nudges = attempt;
      return rep;
    }
  }
  throw ConvergenceError(
      "count_zeros_rectangle: phase refinement failed; a zero may lie on the "
      "contour");
}

}  // namespace sonine
