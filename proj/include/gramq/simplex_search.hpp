#pragma once

// Derivative-free local minimization (Nelder-Mead) used by the coherence and
// accessible-information optimizers.

#include <functional>

#include "gramq/matfun.hpp"

namespace gramq {

struct NelderMeadOptions {
  int max_iters = 2000;
  /// Stop when the spread of objective values across the simplex falls below this.
  double ftol = 1e-10;
  double initial_step = 0.5;
  /// Number of times the search is re-seeded around the incumbent after it
  /// converges; each restart must improve by more than ftol to continue.
  int polish_restarts = 3;
};

struct NelderMeadResult {
  RealVector x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& objective, const RealVector& x0,
                             const NelderMeadOptions& options = {});

}  // namespace gramq
