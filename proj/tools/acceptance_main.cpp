#include <cstdio>
#include <fstream>
#include <string>

#include "sonine/acceptance.hpp"
#include "sonine/errors.hpp"

int main(int argc, char** argv) {
  sonine::RunConfig cfg;
  std::string report;
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        cfg.load(argv[++i]);
      } else if (arg == "--report" && i + 1 < argc) {
        report = argv[++i];
      } else if (arg == "--jobs" && i + 1 < argc) {
        cfg.set("jobs", argv[++i]);
      } else {
        std::fprintf(stderr, "usage: sonine_acceptance [--config FILE] [--jobs N] [--report FILE]\n");
        return 2;
      }
    }
  } catch (const sonine::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }
  const sonine::SuiteResult s = sonine::run_acceptance(cfg);
  for (const auto& c : s.criteria) {
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", c.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.summary.c_str(), c.runtime_ms / 1000.0);
  }
  if (!report.empty()) std::ofstream(report) << s.to_json().dump(2) << "\n";
  return s.passed() ? 0 : 1;
}
