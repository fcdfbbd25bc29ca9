#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

#include "sonine/specfun.hpp"

namespace sonine {

using Json = nlohmann::json;

/// Complex number as {"re", "im"}; real values (im == 0) as plain numbers.
Json complex_json(Complex z);

/// Shortest round-trip decimal form.
std::string format_number(double v);

struct ReportPoint {
  Json x;
  Complex lhs;
  Complex rhs;
  double abs_err = 0.0;
};

/// A named identity check: inputs, per-point sides, residuals, budget.
struct IdentityReport {
  std::string check;
  Json params = Json::object();
  std::vector<ReportPoint> points;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  Json budget = Json::object();
  double runtime_ms = 0.0;

  void add(Json x, Complex lhs, Complex rhs);
  void add(Json x, Complex lhs, Complex rhs, double err);
  bool passed() const { return max_abs_err <= tolerance; }
  Json to_json() const;
};

/// Wall-clock stopwatch in milliseconds.
class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

/// Removes every "runtime_ms" member recursively.
Json strip_runtime(Json j);

}  // namespace sonine
