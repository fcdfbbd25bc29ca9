#pragma once

#include <functional>
#include <string>

#include "json.hpp"

#include "sonine/specfun.hpp"

namespace sonine {

using AnalyticFunction = std::function<Complex(Complex)>;

/// Result of an argument-principle count on an axis-parallel rectangle.
struct ZeroCountReport {
  Complex lower_left;
  Complex upper_right;
  double winding_raw = 0.0;
  int winding_count = 0;
  double predicted = 0.0;
  double ratio = 0.0;
  long contour_budget = 0;
  int nudges = 0;
  // Filled by zero_density_report only.
  int zeta_component = -1;
  int transform_component = -1;

  nlohmann::json to_json() const;
};

struct ContourOptions {
  int nodes_per_unit = 4;
  int max_bisections = 40;
  int max_nudges = 4;
  double nudge = 7.3e-3;
  int jobs = 1;
};

/// Winding number of F around the rectangle [lo.re, hi.re] x [lo.im, hi.im],
/// counter-clockwise, by phase continuation. Each step between samples is
/// bisected until the phase increment is below pi/2. Corners are nudged
/// outward if refinement fails or the total is not within 0.05 of an
/// integer; ConvergenceError after max_nudges attempts.
ZeroCountReport count_zeros_rectangle(const AnalyticFunction& f, Complex lo,
                                      Complex hi,
                                      const ContourOptions& opts = {});

}  // namespace sonine
