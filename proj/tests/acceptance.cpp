// One line per acceptance criterion, followed by its measurements.
#include <cstdio>
#include <exception>

#include "godel/verification.hpp"

int main() {
  try {
    int failed = 0;
    for (int id = 1; id <= godel::kCriterionCount; ++id) {
      const godel::CriterionResult r = godel::run_criterion(id);
      std::printf("%s criterion %d: %s\n", r.passed() ? "PASS" : "FAIL", r.id, r.name.c_str());
      for (const auto& m : r.measurements)
        std::printf("    %s %s\n", m.passed ? "ok  " : "FAIL", godel::format_measurement(m).c_str());
      if (!r.note.empty()) std::printf("    note: %s\n", r.note.c_str());
      std::fflush(stdout);
      if (!r.passed()) ++failed;
    }
    std::printf("%d/%d criteria passed\n", godel::kCriterionCount - failed, godel::kCriterionCount);
    return failed == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
