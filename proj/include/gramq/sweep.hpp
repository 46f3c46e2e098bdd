#pragma once

// α sweeps of the quantumness curves, emitted as CSV.

#include <span>
#include <string>
#include <vector>

#include "gramq/quantifiers.hpp"

namespace gramq {

struct SweepSpec {
  double alpha_start = 0.05;
  double alpha_end = 2.0;
  double alpha_step = 0.05;
  double z = 1.0;
  /// Grid points with |α - 1| < exclude_window are replaced by one α = 1
  /// row carrying the limit value.
  double exclude_window = 1e-3;

  /// Throws InvalidParameter.
  void validate() const;
};

struct SweepRow {
  std::string ensemble;
  double alpha;
  double z;
  Quantifier quantifier;
  double value;
  Method method;
  bool converged = true;
};

inline constexpr const char* kSweepCsvHeader = "ensemble,alpha,z,quantifier,value,method";

/// Ascending α grid; contains exactly 1.0 when [start, end] covers it.
std::vector<double> sweep_grid(const SweepSpec& spec);

/// One row per (ensemble, grid α), ordered by ensemble then α. Rows are
/// computed on worker threads; the output order does not depend on scheduling.
std::vector<SweepRow> sweep(std::span<const Ensemble> ensembles, const SweepSpec& spec,
                            const OptimizerConfig& cfg = {}, bool normalized = false);

/// Header line plus one line per row, values with 17 significant digits.
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace gramq
