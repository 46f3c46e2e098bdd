#pragma once

// Self-check: the structural properties of the library run as randomized
// suites from a single seed.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gramq/ensemble.hpp"

namespace gramq {

struct VerifyOptions {
  std::uint64_t seed = 20230501;
  /// Fewer cases and no grid oracle.
  bool quick = false;
  /// User-supplied ensembles added to the ensemble-level suites.
  std::vector<Ensemble> extra_ensembles;
};

struct SuiteReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  /// Inputs of failing cases, serialized for replay.
  std::vector<std::string> failing_inputs;
  double seconds = 0.0;

  bool passed() const { return failures == 0; }
};

std::vector<SuiteReport> run_verify(const VerifyOptions& options = {});

/// One line per suite plus a summary; returns true iff all suites passed.
bool print_verify_report(const std::vector<SuiteReport>& reports, std::ostream& out);

}  // namespace gramq
