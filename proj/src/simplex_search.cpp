#include "gramq/simplex_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gramq {

namespace {

// Adaptive coefficients (Gao & Han) keep the method effective above ~5 dimensions.
struct Coefficients {
  double reflect, expand, contract, shrink;
  explicit Coefficients(Index n) {
    const double d = static_cast<double>(std::max<Index>(n, 2));
    reflect = 1.0;
    expand = 1.0 + 2.0 / d;
    contract = 0.75 - 1.0 / (2.0 * d);
    shrink = 1.0 - 1.0 / d;
  }
};

NelderMeadResult run_once(const std::function<double(const RealVector&)>& f, const RealVector& x0, double step,
                          int max_iters, double ftol) {
  const Index n = x0.size();
  const Coefficients c(n);
  std::vector<RealVector> pts(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(pts.size());
  NelderMeadResult result;
  int it = 0;
  for (; it < max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    if (std::abs(vals[worst] - vals[best]) <= ftol) {
      result.converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const RealVector xr = centroid + c.reflect * (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      const RealVector xe = centroid + c.expand * (xr - centroid);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector xc = outside ? RealVector(centroid + c.contract * (xr - centroid))
                                  : RealVector(centroid + c.contract * (pts[worst] - centroid));
    const double fc = f(xc);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + c.shrink * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  result.x = pts[best];
  result.value = vals[best];
  result.iterations = it;
  return result;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& objective, const RealVector& x0,
                             const NelderMeadOptions& options) {
  if (x0.size() == 0) return {x0, objective(x0), 0, true};
  NelderMeadResult best = run_once(objective, x0, options.initial_step, options.max_iters, options.ftol);
  int used = best.iterations;
  double step = options.initial_step;
  for (int r = 0; r < options.polish_restarts && used < options.max_iters; ++r) {
    step *= 0.1;
    NelderMeadResult next = run_once(objective, best.x, step, options.max_iters - used, options.ftol);
    used += next.iterations;
    const double gain = best.value - next.value;
    if (next.value < best.value) {
      const bool converged = next.converged;
      best = std::move(next);
      best.converged = converged;
    }
    if (gain <= options.ftol) break;
  }
  best.iterations = used;
  return best;
}

}  // namespace gramq
