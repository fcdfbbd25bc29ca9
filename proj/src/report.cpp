#include "sonine/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace sonine {

Json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

std::string format_number(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void IdentityReport::add(Json x, Complex lhs, Complex rhs) {
  add(std::move(x), lhs, rhs, std::abs(lhs - rhs));
}

void IdentityReport::add(Json x, Complex lhs, Complex rhs, double err) {
  points.push_back({std::move(x), lhs, rhs, err});
  if (std::isnan(err)) {
    max_abs_err = err;
  } else if (!std::isnan(max_abs_err)) {
    max_abs_err = std::max(max_abs_err, err);
  }
}

Json IdentityReport::to_json() const {
  Json pts = Json::array();
  for (const auto& p : points) {
    pts.push_back({{"x", p.x},
                   {"lhs", complex_json(p.lhs)},
                   {"rhs", complex_json(p.rhs)},
                   {"abs_err", p.abs_err}});
  }
  return Json{{"check", check},
              {"params", params},
              {"points", pts},
              {"max_abs_err", max_abs_err},
              {"tolerance", tolerance},
              {"passed", passed()},
              {"budget", budget},
              {"runtime_ms", runtime_ms}};
}

Json strip_runtime(Json j) {
  if (j.is_object()) {
    j.erase("runtime_ms");
    for (auto it = j.begin(); it != j.end(); ++it) *it = strip_runtime(*it);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_runtime(v);
  }
  return j;
}

}  // namespace sonine
