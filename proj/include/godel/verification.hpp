#ifndef GODEL_VERIFICATION_HPP
#define GODEL_VERIFICATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "godel/io.hpp"

namespace godel {

enum class Relation { at_most, at_least, within };

struct Measurement {
  std::string label;
  double value = 0.0;
  Relation relation = Relation::at_most;
  double bound = 0.0;        // at_most / at_least
  double lower = 0.0;        // within
  double upper = 0.0;        // within
  bool residual = false;     // bound is a tolerance that --tol may override
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Measurement> measurements;
  std::string note;
  bool passed() const;
};

struct VerifyOptions {
  /// Replaces every residual tolerance when set.
  std::optional<double> tolerance;
  /// Only the listed criteria (1..11); empty means all.
  std::vector<int> only;
};

inline constexpr int kCriterionCount = 11;

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

std::string format_measurement(const Measurement& m);
/// One line per criterion followed by indented measurement lines.
std::string format_table(const std::vector<CriterionResult>& results);
Json to_json(const std::vector<CriterionResult>& results);

}  // namespace godel

#endif  // GODEL_VERIFICATION_HPP
