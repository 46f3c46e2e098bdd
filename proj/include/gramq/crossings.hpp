#pragma once

// Intersections of the z = 1 quantumness curves with each other and with
// the comparison quantifiers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gramq/quantifiers.hpp"

namespace gramq {

struct CrossingResult {
  std::string ensemble;
  std::string lhs;  // curve id, e.g. "Qaz(trine)"
  std::string rhs;  // curve id or quantifier name
  /// "curve", "table" (two-decimal reference constant) or "computed".
  std::string rhs_source;
  double rhs_value = 0.0;  // the constant, when rhs is one
  std::optional<double> alpha_root;
  double residual = 0.0;
  /// Two-decimal abscissa reported alongside the reference figures.
  std::optional<double> reference_alpha;
};

struct RootScan {
  double lo = 0.01;
  double hi = 2.0;
  double scan_step = 0.01;
  double tol = 1e-10;
};

/// Roots of g on [lo, hi]: sign changes bracketed on the scan grid, then
/// bisected to `tol` in α. Exact zeros on the grid are returned as-is.
std::vector<double> bracket_roots(const std::function<double(double)>& g, const RootScan& scan = {});

/// Q_{α,1} of the canonical ensemble through the generic pipeline (limit at α = 1).
double z1_curve(const Ensemble& e, double alpha);

struct CrossingOptions {
  /// Also solve against exactly computed Ql1 / Qcomm / Qbig / QHol.
  bool include_computed = true;
  OptimizerConfig hol_cfg{.restarts = 8};
  RootScan scan{};
};

/// trine-vs-diag plus every curve-vs-constant pair listed in the comparison
/// observations. A pair without a sign change is reported with no root.
std::vector<CrossingResult> find_crossings(const CrossingOptions& options = {});

}  // namespace gramq
