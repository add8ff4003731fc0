#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mostow::verify {

/// One reduced quantity of a suite. `upper` means pass iff value <= threshold,
/// otherwise pass iff value >= threshold.
struct Metric {
  std::string name;
  double value;
  double threshold;
  bool upper;

  bool pass() const { return upper ? value <= threshold : value >= threshold; }
};

struct SuiteReport {
  std::string suite;
  int n;
  int trials;
  std::uint64_t seed;
  std::vector<Metric> metrics;
  int non_converged = 0;

  bool pass() const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"curvature", "triangles", "convexity", "mostow",
                                              "orbits"};
  return names;
}

/// Runs one named suite. Trials are independent seeded sub-streams and may run
/// on up to `threads` workers (0 = sequential); reductions are max/min, so the
/// report does not depend on scheduling. Throws ValidationError for an
/// unknown suite, n < 2 or trials < 1.
SuiteReport run_suite(const std::string& suite, int n, int trials, std::uint64_t seed,
                      unsigned threads = 0);

/// Threads allowed by MOSTOW_GEO_THREADS (unset: hardware concurrency).
unsigned thread_cap();

/// Deterministic text rendering, one line per metric.
std::string render(const SuiteReport& report);

}  // namespace mostow::verify
