#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmrf::verify {

enum class Scale { Quick, Full };

/// Deliberate corruption used to confirm that the suite detects failures.
enum class Fault { None, WeightRowSum };

struct Options {
  Scale scale = Scale::Quick;
  std::uint64_t seed = 1;
  Fault fault = Fault::None;
};

struct CheckResult {
  std::string name;
  /// The property exercised, in words.
  std::string property;
  bool passed = false;
  /// Cases examined and worst slack seen, or the first counterexample.
  std::string detail;
};

/// Runs every property suite on randomized instances. Deterministic in `seed`.
std::vector<CheckResult> run_all(const Options& options);

}  // namespace cmrf::verify
